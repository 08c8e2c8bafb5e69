#include <veneroni/veneroni.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Unique {
    void operator()(vn_flats* p) const { vn_flats_free(p); }
    void operator()(vn_map* p) const { vn_map_free(p); }
    void operator()(vn_report* p) const { vn_report_free(p); }
    void operator()(char* p) const { vn_string_free(p); }
};
template <class T>
using Owned = std::unique_ptr<T, Unique>;

struct Config {
    unsigned n = 0;
    uint64_t seed = 0;
    long long bound = 9;
    std::string field = "qq";
    std::string level = "full";
    std::size_t samples = 20;
    bool json = false;
    bool force_symbolic = false;
    bool timing = false;
    std::string input;
    std::string output;
    std::string point;
    std::vector<std::size_t> omit;
    std::string strategy = "minor_dp";
    unsigned n_min = 2, n_max = 4, reps = 3;
    bool force = false;
};

int fail_with(vn_status st, const std::string& what) {
    std::cerr << "error: " << what << ": " << vn_status_name(st);
    if (*vn_last_error()) std::cerr << ": " << vn_last_error();
    std::cerr << "\n";
    switch (st) {
        case VN_ERR_GENERICITY:
        case VN_ERR_CONSTRUCTION:
        case VN_ERR_DIVISION:
        case VN_ERR_VERIFICATION_FAILED:
        case VN_ERR_INTERNAL: return kExitFailed;
        default: return kExitUsage;
    }
}

bool read_input(const std::string& path, std::string& text) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    return true;
}

bool write_output(const std::string& path, const char* text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    return true;
}

bool check_field(const std::string& field) {
    if (field == "qq") return true;
    if (field.rfind("fp:", 0) != 0) {
        std::cerr << "error: field must be qq or fp:<p>\n";
        return false;
    }
    try {
        std::size_t used = 0;
        unsigned long long p = std::stoull(field.substr(3), &used);
        if (used != field.size() - 3) throw std::invalid_argument("trailing");
        if (p < (1ull << 30)) {
            std::cerr << "warning: prime " << p << " is below 2^30; sampled checks may hit accidental zeros\n";
        }
    } catch (const std::exception&) {
        std::cerr << "error: malformed prime in " << field << "\n";
        return false;
    }
    return true;
}

void print_report_summary(const char* report_json, std::ostream& os) {
    Json r = Json::parse(report_json);
    for (const auto& c : r["checks"]) {
        std::string st = c["status"].get<std::string>();
        for (auto& ch : st) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        os << st << "  " << c["name"].get<std::string>();
        if (c["witness"].contains("error")) os << "  (" << c["witness"]["error"].get<std::string>() << ")";
        os << "\n";
    }
    const auto& s = r["summary"];
    os << (s["passed"].get<bool>() ? "all asserted checks passed" : "verification FAILED") << " ("
       << s["total"] << " checks, " << s["failed"].size() << " failed, " << s["skipped"].size() << " skipped)\n";
}

int cmd_generate(const Config& c) {
    if (c.n < 2 || c.n > 6) {
        std::cerr << "error: -n must be in 2..6\nusage: veneroni generate -n <2..6> [--seed S] [--bound B] [-o FILE]\n";
        return kExitUsage;
    }
    if (c.bound < 1) {
        std::cerr << "error: --bound must be at least 1\n";
        return kExitUsage;
    }
    if (!check_field(c.field)) return kExitUsage;
    vn_flats* raw = nullptr;
    vn_status st = vn_flats_generate(c.n, c.seed, c.bound, c.field.c_str(), &raw);
    if (st != VN_OK) return fail_with(st, "generate");
    Owned<vn_flats> flats(raw);
    char* text = nullptr;
    if ((st = vn_flats_to_json(flats.get(), &text)) != VN_OK) return fail_with(st, "serialize");
    Owned<char> owned(text);
    std::cerr << "retries: " << vn_flats_retries(flats.get()) << "\n";
    return write_output(c.output, text) ? kExitOk : kExitUsage;
}

vn_det_strategy parse_strategy(const std::string& s) { return s == "bareiss" ? VN_DET_BAREISS : VN_DET_MINOR_DP; }

int cmd_build(const Config& c) {
    std::string text;
    if (!read_input(c.input, text)) return kExitUsage;
    vn_flats* raw = nullptr;
    vn_status st = vn_flats_from_json(text.c_str(), &raw);
    if (st != VN_OK) return fail_with(st, "read flats");
    Owned<vn_flats> flats(raw);
    vn_map* m = nullptr;
    if ((st = vn_map_build(flats.get(), parse_strategy(c.strategy), &m)) != VN_OK) {
        return fail_with(st, "construction check failed");
    }
    Owned<vn_map> map(m);
    char* out = nullptr;
    if ((st = vn_map_to_json(map.get(), &out)) != VN_OK) return fail_with(st, "serialize");
    Owned<char> owned(out);
    return write_output(c.output, out) ? kExitOk : kExitUsage;
}

int cmd_verify(const Config& c) {
    if (c.field != "qq" && !check_field(c.field)) return kExitUsage;
    std::string text;
    if (!read_input(c.input, text)) return kExitUsage;
    std::string kind;
    try {
        Json j = Json::parse(text);
        if (j.is_object() && j.contains("kind") && j["kind"].is_string()) kind = j["kind"].get<std::string>();
    } catch (const Json::parse_error& e) {
        std::cerr << "error: parse error at byte " << e.byte << ": malformed JSON\n";
        return kExitUsage;
    }
    vn_verify_options opts;
    vn_verify_options_init(&opts);
    opts.level = c.level == "fast" ? VN_LEVEL_FAST : VN_LEVEL_FULL;
    opts.samples = c.samples;
    opts.seed = c.seed;
    opts.sample_field = c.field == "qq" ? nullptr : c.field.c_str();
    opts.force_symbolic = c.force_symbolic;
    opts.timing = c.timing;
    opts.strategy = parse_strategy(c.strategy);

    vn_report* rep = nullptr;
    vn_status st;
    if (kind == "map") {
        vn_map* m = nullptr;
        if ((st = vn_map_from_json(text.c_str(), &m)) != VN_OK) return fail_with(st, "read map");
        Owned<vn_map> map(m);
        st = vn_verify_map(map.get(), &opts, &rep);
    } else {
        vn_flats* f = nullptr;
        if ((st = vn_flats_from_json(text.c_str(), &f)) != VN_OK) return fail_with(st, "read flats");
        Owned<vn_flats> flats(f);
        st = vn_verify_flats(flats.get(), &opts, &rep);
    }
    if (st != VN_OK) return fail_with(st, "verify");
    Owned<vn_report> report(rep);
    char* out = nullptr;
    if ((st = vn_report_to_json(report.get(), &out)) != VN_OK) return fail_with(st, "serialize");
    Owned<char> owned(out);
    bool ok = true;
    if (!c.output.empty()) ok = write_output(c.output, out);
    if (c.json && c.output != "-") {
        std::cout << out;
    } else if (!c.json) {
        print_report_summary(out, c.output == "-" ? std::cerr : std::cout);
    }
    if (!ok) return kExitUsage;
    return vn_report_passed(report.get()) ? kExitOk : kExitFailed;
}

std::string join_point(const Json& p) {
    std::string s = "(";
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k) s += " : ";
        s += p[k].is_string() ? p[k].get<std::string>() : p[k].dump();
    }
    return s + ")";
}

int cmd_transversal(const Config& c) {
    std::string text;
    if (!read_input(c.input, text)) return kExitUsage;
    vn_flats* f = nullptr;
    vn_status st = vn_flats_from_json(text.c_str(), &f);
    if (st != VN_OK) return fail_with(st, "read flats");
    Owned<vn_flats> flats(f);
    char* out = nullptr;
    st = vn_transversal(flats.get(), c.point.c_str(), c.omit.data(), c.omit.size(), &out);
    if (st != VN_OK) return fail_with(st, "transversal");
    Owned<char> owned(out);
    if (c.json) {
        std::cout << out;
        return kExitOk;
    }
    Json r = Json::parse(out);
    const std::string kind = r["kind"];
    if (kind == "unique") {
        std::cout << "unique transversal through " << join_point(r["line"][0]) << " and " << join_point(r["line"][1])
                  << "\n";
        for (const auto& m : r["meetings"]) {
            std::cout << "  meets flat " << m["flat"] << " at " << join_point(m["point"]) << "\n";
        }
        std::cout << "  meeting points distinct: " << (r["distinct_meetings"].get<bool>() ? "yes" : "no") << "\n";
    } else if (kind == "family") {
        std::cout << "family of transversals of dimension " << r["family_dim"] << "\n";
        for (const auto& b : r["basis"]) std::cout << "  direction " << join_point(b) << "\n";
    } else {
        std::cout << "no transversal\n";
    }
    return kExitOk;
}

int cmd_demo(const Config& c) {
    if (c.n != 3 && c.n != 4) {
        std::cerr << "error: demo needs -n 3 or -n 4\n";
        return kExitUsage;
    }
    char* out = nullptr;
    vn_status st = vn_demo(c.n, c.seed, &out);
    if (st != VN_OK) return fail_with(st, "demo");
    Owned<char> owned(out);
    Json r = Json::parse(out);
    if (c.json || !c.output.empty()) {
        if (!write_output(c.output, out)) return kExitUsage;
    }
    if (!c.json) print_report_summary(out, c.output == "-" ? std::cerr : std::cout);
    return r["summary"]["passed"].get<bool>() ? kExitOk : kExitFailed;
}

int cmd_bench(const Config& c) {
    unsigned mask = 0;
    if (c.strategy == "minor_dp" || c.strategy == "both") mask |= 1u << VN_DET_MINOR_DP;
    if (c.strategy == "bareiss" || c.strategy == "both") mask |= 1u << VN_DET_BAREISS;
    char* out = nullptr;
    vn_status st = vn_bench(c.n_min, c.n_max, c.reps, c.seed, mask, c.force, &out);
    if (st != VN_OK) {
        int code = fail_with(st, "bench");
        return st == VN_ERR_LIMIT ? kExitUsage : code;
    }
    Owned<char> owned(out);
    if (c.json || !c.output.empty()) {
        if (!write_output(c.output, out)) return kExitUsage;
        if (c.json) return kExitOk;
    }
    Json r = Json::parse(out);
    std::printf("%3s  %-9s  %12s  %10s  %12s\n", "n", "strategy", "median ms", "det terms", "comp terms");
    for (const auto& row : r["rows"]) {
        std::string comp = row.contains("peak_composition_terms") ? row["peak_composition_terms"].dump() : "-";
        std::printf("%3u  %-9s  %12.3f  %10zu  %12s\n", row["n"].get<unsigned>(),
                    row["strategy"].get<std::string>().c_str(), row["median_ms"].get<double>(),
                    row["peak_det_terms"].get<std::size_t>(), comp.c_str());
    }
    std::printf("strategies agree: %s\n", r["strategies_agree"].get<bool>() ? "yes" : "no");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Veneroni transformations: construction and exact verification"};
    app.set_version_flag("--version", vn_version());
    app.require_subcommand(1);
    Config c;

    auto* gen = app.add_subcommand("generate", "random general flats");
    gen->add_option("-n", c.n, "dimension (2..6)")->required();
    gen->add_option("--seed", c.seed, "64-bit seed");
    gen->add_option("--bound", c.bound, "coefficient bound");
    gen->add_option("--field", c.field, "qq or fp:<p>");
    gen->add_option("-o,--output", c.output, "flats file (stdout if omitted)");

    auto* build = app.add_subcommand("build", "construct the map and its inverse");
    build->add_option("-i,--input", c.input, "flats file")->required();
    build->add_option("-o,--output", c.output, "map file (stdout if omitted)");
    build->add_option("--strategy", c.strategy, "minor_dp or bareiss")->check(CLI::IsMember({"minor_dp", "bareiss"}));

    auto* verify = app.add_subcommand("verify", "run the verification suite on flats or a map");
    verify->add_option("-i,--input", c.input, "flats or map file")->required();
    verify->add_option("-o,--output", c.output, "report file");
    verify->add_option("--level", c.level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("-k", c.samples, "sample count");
    verify->add_option("--seed", c.seed, "seed for sampled checks");
    verify->add_option("--field", c.field, "field for sampled checks: qq or fp:<p>");
    verify->add_flag("--force-symbolic", c.force_symbolic, "symbolic composition for every n");
    verify->add_flag("--timing", c.timing, "record per-check milliseconds");
    verify->add_flag("--json", c.json, "print the report JSON");
    verify->add_option("--strategy", c.strategy, "minor_dp or bareiss")->check(CLI::IsMember({"minor_dp", "bareiss"}));

    auto* trans = app.add_subcommand("transversal", "transversal line through a point");
    trans->add_option("-i,--input", c.input, "flats file")->required();
    trans->add_option("--point", c.point, "comma-separated coordinates, e.g. 1,2/3,0,5,1")->required();
    trans->add_option("--omit", c.omit, "flat indices to leave out")->delimiter(',');
    trans->add_flag("--json", c.json, "machine-readable output");

    auto* demo = app.add_subcommand("demo", "worked examples for n = 3 and n = 4");
    demo->add_option("-n", c.n, "3 or 4")->required();
    demo->add_option("--seed", c.seed, "seed");
    demo->add_option("-o,--output", c.output, "report file");
    demo->add_flag("--json", c.json, "print the report JSON");

    auto* bench = app.add_subcommand("bench", "determinant benchmark");
    bench->add_option("--n-min", c.n_min, "smallest n");
    bench->add_option("--n-max", c.n_max, "largest n");
    bench->add_option("--reps", c.reps, "repetitions per measurement");
    bench->add_option("--seed", c.seed, "seed");
    bench->add_option("--strategy", c.strategy, "minor_dp, bareiss or both")
        ->check(CLI::IsMember({"minor_dp", "bareiss", "both"}));
    bench->add_flag("--force", c.force, "lift the default size caps");
    bench->add_flag("--json", c.json, "print JSON");
    bench->add_option("-o,--output", c.output, "JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*gen) return cmd_generate(c);
    if (*build) return cmd_build(c);
    if (*verify) return cmd_verify(c);
    if (*trans) return cmd_transversal(c);
    if (*demo) return cmd_demo(c);
    if (*bench) {
        if (c.strategy == "minor_dp" && bench->count("--strategy") == 0) c.strategy = "both";
        return cmd_bench(c);
    }
    return kExitUsage;
}
