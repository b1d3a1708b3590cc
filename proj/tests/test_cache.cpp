#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "forbcfg/cache.hpp"

using namespace forbcfg;
using nlohmann::json;

namespace {

// A throwaway cache file in the working directory, removed on scope exit.
struct TempCache {
    std::string path;
    explicit TempCache(const std::string& name) : path(name) { std::remove(path.c_str()); }
    ~TempCache() { std::remove(path.c_str()); }
};

RunRecord make_record(const std::string& command, const json& params, const json& result) {
    RunRecord r;
    r.command = command;
    r.parameters = params;
    r.result = result;
    r.timestamp = utc_timestamp();
    return r;
}

}  // namespace

TEST_CASE("cache misses on absent file and absent key") {
    TempCache tc("test_cache_miss.jsonl");
    CHECK_FALSE(cache_get("forb {}", tc.path).has_value());

    json params = {{"m", 3}};
    cache_put(cache_key("forb", params), make_record("forb", params, {{"value", 5}}), tc.path);
    CHECK_FALSE(cache_get(cache_key("forb", json{{"m", 4}}), tc.path).has_value());
    CHECK_FALSE(cache_get(cache_key("bound", params), tc.path).has_value());
}

TEST_CASE("cache round trip keeps all record fields") {
    TempCache tc("test_cache_round.jsonl");
    json params = {{"m", 3}, {"pattern", "2x1^1.0^1"}};
    std::string key = cache_key("forb", params);
    cache_put(key, make_record("forb", params, {{"max_columns", 5}}), tc.path);

    auto got = cache_get(key, tc.path);
    REQUIRE(got.has_value());
    CHECK((*got)["command"] == "forb");
    CHECK((*got)["parameters"] == params);
    CHECK((*got)["result"]["max_columns"] == 5);
    CHECK((*got)["version"] == tool_version);
    CHECK((*got)["timestamp"].is_string());
}

TEST_CASE("latest record wins for a repeated key") {
    TempCache tc("test_cache_latest.jsonl");
    json params = {{"m", 2}};
    std::string key = cache_key("forb", params);
    cache_put(key, make_record("forb", params, {{"value", 1}}), tc.path);
    cache_put(key, make_record("forb", params, {{"value", 2}}), tc.path);

    auto got = cache_get(key, tc.path);
    REQUIRE(got.has_value());
    CHECK((*got)["result"]["value"] == 2);
}

TEST_CASE("corrupted lines are skipped, valid ones still served") {
    TempCache tc("test_cache_corrupt.jsonl");
    json params = {{"m", 5}};
    std::string key = cache_key("check", params);
    cache_put(key, make_record("check", params, {{"contains", false}}), tc.path);
    {
        std::ofstream out(tc.path, std::ios::app);
        out << "{this is not json\n";
        out << "[1,2,3]\n";  // valid JSON but not a record object
    }
    auto got = cache_get(key, tc.path);
    REQUIRE(got.has_value());
    CHECK((*got)["result"]["contains"] == false);
}

TEST_CASE("key canonicalization is insertion-order independent") {
    json a;
    a["m"] = 7;
    a["q"] = 3;
    json b;
    b["q"] = 3;
    b["m"] = 7;
    CHECK(cache_key("bound", a) == cache_key("bound", b));
    CHECK(cache_key("bound", a) != cache_key("forb", a));
}

TEST_CASE("timestamps are UTC ISO 8601") {
    std::string ts = utc_timestamp();
    REQUIRE(ts.size() == 20);
    CHECK(ts[4] == '-');
    CHECK(ts[7] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts[13] == ':');
    CHECK(ts[16] == ':');
    CHECK(ts.back() == 'Z');
}

TEST_CASE("cache location honors the environment override") {
    setenv("FORBCFG_CACHE", "somewhere_else.jsonl", 1);
    CHECK(cache_path() == "somewhere_else.jsonl");
    unsetenv("FORBCFG_CACHE");
    CHECK(cache_path() == "forbcfg_cache.jsonl");
}
