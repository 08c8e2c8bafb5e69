#ifndef VENERONI_IO_HPP
#define VENERONI_IO_HPP

#include <optional>
#include <string>
#include <string_view>

#include "veneroni/veneroni.hpp"

namespace veneroni {

inline constexpr const char* kToolVersion = "0.3.1";

/// Metadata embedded in every artifact.
struct InstanceMeta {
    std::optional<std::uint64_t> seed;
    std::optional<long long> bound;
    std::optional<std::size_t> retries;
};

/// Throws ParseError carrying the byte offset of malformed JSON.
Json parse_json_text(std::string_view text);
/// Two-space indented text with a trailing newline.
std::string dump_json(const Json& j);

Json scalar_to_json(const Scalar& s);
/// Accepts "num/den" strings and JSON integers.
Scalar scalar_from_json(const Json& j, const FieldCtx& field);

Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j, const RingPtr& ring);

Json point_to_json(const ProjPoint& p);
Json transversal_to_json(const TransversalResult& t);

Json flats_to_json(std::span<const Flat> flats, const InstanceMeta& meta);

struct LoadedFlats {
    std::vector<Flat> flats;
    InstanceMeta meta;
    /// Set when the file gave raw form pairs that were normalized.
    std::optional<ScalarMatrix> change;
};

/// "f2" is a coefficient array or a linear polynomial in x0..xn. An optional
/// "f1" on every flat requests normalization to canonical coordinates.
LoadedFlats flats_from_json(const Json& j);

Json map_to_json(const VeneroniMap& m, const InverseData& inv, const InstanceMeta& meta);

struct LoadedMap {
    VeneroniMap map;
    InverseData inv;
    InstanceMeta meta;
};

/// Structural validation only; the verification suite checks the content.
LoadedMap map_from_json(const Json& j);

Json report_to_json(const VerificationReport& r);

}  // namespace veneroni

#endif
