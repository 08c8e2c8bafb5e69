#include <veneroni/veneroni.h>

#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"

using Json = nlohmann::ordered_json;

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    vn_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(vn_version()) == "0.3.1");
    CHECK(std::string(vn_status_name(VN_OK)) == "ok");
    CHECK(std::string(vn_status_name(VN_ERR_PARSE)) == "parse error");
    CHECK(vn_last_error() != nullptr);
}

TEST_CASE("generate, build, verify") {
    vn_flats* flats = nullptr;
    REQUIRE(vn_flats_generate(3, 42, 9, "qq", &flats) == VN_OK);
    CHECK(vn_flats_n(flats) == 3);
    char* text = nullptr;
    REQUIRE(vn_flats_to_json(flats, &text) == VN_OK);
    std::string flats_text = take(text);
    Json fj = Json::parse(flats_text);
    CHECK(fj["seed"] == 42);

    vn_flats* again = nullptr;
    REQUIRE(vn_flats_from_json(flats_text.c_str(), &again) == VN_OK);
    REQUIRE(vn_flats_to_json(again, &text) == VN_OK);
    CHECK(take(text) == flats_text);

    vn_map* map = nullptr;
    REQUIRE(vn_map_build(flats, VN_DET_BAREISS, &map) == VN_OK);
    REQUIRE(vn_map_to_json(map, &text) == VN_OK);
    std::string map_text = take(text);
    Json mj = Json::parse(map_text);
    CHECK(mj["components"].size() == 4);
    CHECK(mj["Q"][0]["degree"] == 2);

    vn_verify_options opts;
    vn_verify_options_init(&opts);
    CHECK(opts.samples == 20);
    vn_report* rep = nullptr;
    REQUIRE(vn_verify_map(map, &opts, &rep) == VN_OK);
    CHECK(vn_report_passed(rep) == 1);
    REQUIRE(vn_report_to_json(rep, &text) == VN_OK);
    Json rj = Json::parse(take(text));
    CHECK(rj["instance"]["n"] == 3);
    CHECK(rj["instance"]["seed"] == 42);
    CHECK(rj["instance"]["tool_version"] == "0.3.1");
    vn_report_free(rep);

    mj["b"][0][1] = "999";
    vn_map* bad = nullptr;
    REQUIRE(vn_map_from_json(mj.dump().c_str(), &bad) == VN_OK);
    REQUIRE(vn_verify_map(bad, &opts, &rep) == VN_OK);
    CHECK(vn_report_passed(rep) == 0);
    REQUIRE(vn_report_to_json(rep, &text) == VN_OK);
    rj = Json::parse(take(text));
    bool composition_failed = false;
    for (const auto& c : rj["checks"])
        if (c["name"] == "composition") composition_failed = c["status"] == "fail";
    CHECK(composition_failed);
    vn_report_free(rep);
    vn_map_free(bad);
    vn_map_free(map);
    vn_flats_free(again);
    vn_flats_free(flats);
}

TEST_CASE("error statuses") {
    vn_flats* f = nullptr;
    CHECK(vn_flats_generate(1, 1, 9, nullptr, &f) != VN_OK);
    CHECK(f == nullptr);
    CHECK(std::strlen(vn_last_error()) > 0);
    CHECK(vn_flats_generate(3, 1, 0, nullptr, &f) == VN_ERR_INVALID_ARGUMENT);
    CHECK(vn_flats_generate(3, 1, 9, "fp:12", &f) == VN_ERR_INVALID_ARGUMENT);
    CHECK(vn_flats_from_json("{\"n\": 3,", &f) == VN_ERR_PARSE);
    CHECK(std::string(vn_last_error()).find("offset") != std::string::npos);
    CHECK(vn_flats_from_json("{\"n\": 3}", &f) == VN_ERR_PARSE);
    CHECK(vn_flats_to_json(nullptr, nullptr) == VN_ERR_INVALID_ARGUMENT);
    vn_map* m = nullptr;
    CHECK(vn_map_from_json("[]", &m) == VN_ERR_PARSE);
    char* out = nullptr;
    CHECK(vn_bench(2, 7, 1, 1, 1, 0, &out) == VN_ERR_LIMIT);
    CHECK(vn_bench(2, 6, 1, 1, 2, 0, &out) == VN_ERR_LIMIT);
    CHECK(vn_demo(5, 1, &out) == VN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("small primes are accepted on request") {
    vn_flats* f = nullptr;
    REQUIRE(vn_flats_generate(2, 3, 9, "fp:1000003", &f) == VN_OK);
    char* text = nullptr;
    REQUIRE(vn_flats_to_json(f, &text) == VN_OK);
    CHECK(Json::parse(take(text))["field"] == "fp:1000003");
    vn_flats_free(f);
}

TEST_CASE("transversal queries") {
    vn_flats* f = nullptr;
    REQUIRE(vn_flats_generate(4, 42, 9, nullptr, &f) == VN_OK);
    char* out = nullptr;
    size_t omit[] = {0, 1};
    REQUIRE(vn_transversal(f, "1,2/3,0,5,1", omit, 2, &out) == VN_OK);
    Json j = Json::parse(take(out));
    CHECK(j["kind"] == "unique");
    CHECK(j["meetings"].size() == 3);
    CHECK(j["distinct_meetings"] == true);
    REQUIRE(vn_transversal(f, "1,2/3,0,5,1", nullptr, 0, &out) == VN_OK);
    CHECK(Json::parse(take(out))["kind"] == "none");
    CHECK(vn_transversal(f, "1,2,3", nullptr, 0, &out) == VN_ERR_PARSE);
    CHECK(vn_transversal(f, "1,a,3,4,5", nullptr, 0, &out) == VN_ERR_PARSE);
    size_t too_big[] = {9};
    CHECK(vn_transversal(f, "1,2,3,4,5", too_big, 1, &out) == VN_ERR_INVALID_ARGUMENT);
    vn_flats_free(f);
}

TEST_CASE("bench and demo") {
    char* out = nullptr;
    REQUIRE(vn_bench(2, 4, 3, 1, 3, 0, &out) == VN_OK);
    Json j = Json::parse(take(out));
    CHECK(j["strategies_agree"] == true);
    CHECK(j["rows"].size() == 6);
    for (const auto& r : j["rows"]) {
        unsigned n = r["n"];
        CHECK(r["det_terms"].size() == n + 1);
        CHECK(r.contains("peak_composition_terms"));
    }
    REQUIRE(vn_demo(3, 42, &out) == VN_OK);
    j = Json::parse(take(out));
    CHECK(j["summary"]["passed"] == true);
    CHECK(j["checks"][0]["witness"]["count"] == 2);
    REQUIRE(vn_demo(4, 42, &out) == VN_OK);
    j = Json::parse(take(out));
    CHECK(j["summary"]["passed"] == true);
}
