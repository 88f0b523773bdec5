#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace cli = rsacount::cli;
using Json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// RFC 4180 reader: quoted cells, doubled quotes, CRLF records.
std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(cell);
            cell.clear();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            row.push_back(cell);
            rows.push_back(row);
            row.clear();
            cell.clear();
            ++i;
        } else {
            cell += c;
        }
    }
    REQUIRE(row.empty());
    REQUIRE(cell.empty());
    return rows;
}

std::string temp_file(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

std::string cell_text(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
        return buf;
    }
    return v.dump();
}

}  // namespace

TEST_CASE("count example") {
    const auto r = run({"count", "--x", "100", "--r", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "x,r,s,method,landau_regime,sum_mid,sum_small,sum_sub,total\r\n"
                   "100,3,100/3,sieve,false,6,13,10,9\r\n");
    CHECK(r.err.empty());
}

TEST_CASE("count by s and by oracle") {
    const auto by_s = read_csv(run({"count", "--x", "1e8", "--s", "100"}).out);
    REQUIRE(by_s.size() == 2);
    CHECK(by_s[1][1] == "1000000");
    CHECK(by_s[1][2] == "100");
    for (const char* shape : {"3/2", "7", "1025/1024", "250000"}) {
        const auto sieve = read_csv(run({"count", "--x", "1000000", "--r", shape}).out);
        const auto oracle = read_csv(run({"count", "--x", "1000000", "--r", shape, "--oracle"}).out);
        REQUIRE(sieve.size() == 2);
        REQUIRE(oracle.size() == 2);
        CHECK(oracle[1][3] == "oracle");
        CHECK(oracle[1][5].empty());
        CHECK(sieve[1][8] == oracle[1][8]);
        CHECK(sieve[1][4] == oracle[1][4]);
        CHECK(sieve[1][2] == oracle[1][2]);
    }
}

TEST_CASE("pi2 example") {
    const auto r = run({"pi2", "--x", "100"});
    CHECK(r.code == 0);
    CHECK(r.out == "x,pi2\r\n100,30\r\n");
}

TEST_CASE("help and usage exit codes") {
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("count") != std::string::npos);
    CHECK(run({"count", "--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"count", "--x", "100"}).code == 2);
    CHECK(run({"count", "--x", "100", "--r", "3", "--s", "4"}).code == 2);
    CHECK(run({"count", "--x", "abc", "--r", "3"}).code == 2);
    CHECK(run({"count", "--x", "100", "--r", "3", "--bogus"}).code == 2);
    CHECK(run({"--format", "xml", "pi2", "--x", "100"}).code == 2);
    CHECK(run({"--threads", "0", "pi2", "--x", "100"}).code == 2);
    CHECK(run({"--error-model", "nope", "pi2", "--x", "100"}).code == 2);
    CHECK(run({"lchi", "--s", "100", "--char", "kronecker:6"}).code == 2);
    CHECK(run({"lchi", "--s", "100", "--char", "table:4:0,1,0,1"}).code == 2);
    CHECK(run({"bias", "--x", "100", "--s", "4", "--char", "kronecker:-4", "--eta", "0"}).code == 2);
    CHECK(run({"approx", "--x", "1e6", "--r", "3", "--model", "nope"}).code == 2);
}

TEST_CASE("domain exit codes") {
    const auto r = run({"count", "--x", "100", "--r", "1"});
    CHECK(r.code == 3);
    CHECK(r.out.empty());
    CHECK(r.err.find("domain") != std::string::npos);
    CHECK(run({"count", "--x", "2000000", "--r", "3", "--oracle"}).code == 3);
    CHECK(run({"--oracle-cap", "2000000", "count", "--x", "2000000", "--r", "3", "--oracle"}).code == 0);
    CHECK(run({"lchi", "--s", "3", "--char", "kronecker:-4"}).code == 3);
    CHECK(run({"approx", "--x", "100", "--r", "30", "--model", "g_r"}).code == 3);
    CHECK(run({"shortint", "--x", "3", "--h", "1"}).code == 3);
}

TEST_CASE("hypothesis warnings and strict mode") {
    const auto loose = run({"approx", "--x", "1e6", "--r", "2", "--model", "thm_small"});
    CHECK(loose.code == 0);
    CHECK(loose.err.find("hypothesis") != std::string::npos);
    const auto rows = read_csv(loose.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][5].find("hypothesis") != std::string::npos);
    CHECK(run({"--strict", "approx", "--x", "1e6", "--r", "2", "--model", "thm_small"}).code == 3);
    CHECK(run({"--strict", "bias", "--x", "1000", "--s", "800", "--char", "kronecker:-4", "--eta", "+1"}).code == 3);
}

TEST_CASE("approx lists every approximant with 12 significant digits") {
    const auto r = run({"approx", "--x", "100", "--r", "3"});
    CHECK(r.code == 0);
    const auto rows = read_csv(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == std::vector<std::string>{"x", "r", "model", "error_model", "value", "warnings"});
    CHECK(rows[1][2] == "landau");
    char expect[32];
    std::snprintf(expect, sizeof expect, "%.12g", 100 * std::log(std::log(100.0)) / std::log(100.0));
    CHECK(rows[1][4] == expect);
    CHECK(rows[1][3] == "grh");
}

TEST_CASE("CSV and JSON carry the same table") {
    const std::vector<std::vector<std::string>> commands{
        {"count", "--x", "100000", "--r", "7/2"},
        {"approx", "--x", "1000", "--r", "300"},
        {"lchi", "--s", "100", "--char", "kronecker:-4"},
        {"bias", "--grid", "1000:4,10:4,1000:2,100000:10", "--char", "kronecker:-4", "--eta", "-1"},
        {"shortint", "--x", "10000", "--h", "40"},
    };
    for (const auto& cmd : commands) {
        const auto csv = run(cmd);
        auto json_args = cmd;
        json_args.insert(json_args.begin(), {"--format", "json"});
        const auto js = run(json_args);
        REQUIRE(csv.code == 0);
        REQUIRE(js.code == 0);
        const auto table = read_csv(csv.out);
        const auto doc = Json::parse(js.out);
        CHECK(doc["meta"]["command"] == cmd[0]);
        const auto columns = doc["meta"]["columns"].get<std::vector<std::string>>();
        CHECK(table[0] == columns);
        REQUIRE(table.size() == doc["rows"].size() + 1);
        for (std::size_t i = 0; i < doc["rows"].size(); ++i)
            for (std::size_t c = 0; c < columns.size(); ++c)
                CHECK(table[i + 1][c] == cell_text(doc["rows"][i][columns[c]]));
    }
}

TEST_CASE("bias rows") {
    const auto r = run({"--format", "json", "bias", "--x", "100", "--s", "4", "--char", "kronecker:-4", "--eta", "-1"});
    REQUIRE(r.code == 0);
    const auto row = Json::parse(r.out)["rows"][0];
    CHECK(row["emp_num"] == 6);
    CHECK(row["emp_den"] == 16);
    CHECK(row["emp_ratio"] == 0.375);
    CHECK(row["r"] == "25");
    CHECK(row["status"] == "ok");
    const auto grid = Json::parse(
        run({"--format", "json", "bias", "--grid", "10:4,1000:2", "--char", "kronecker:-4", "--eta", "+1"}).out);
    CHECK(grid["rows"][0]["status"] == "undefined_ratio");
    CHECK(grid["rows"][0]["emp_ratio"].is_null());
    CHECK(grid["rows"][1]["status"].get<std::string>().starts_with("error: "));
    CHECK(run({"bias", "--grid", "1000:4", "--x", "1000", "--char", "kronecker:-4", "--eta", "1"}).code == 2);
    CHECK(run({"bias", "--grid", "1000", "--char", "kronecker:-4", "--eta", "1"}).code == 2);
}

TEST_CASE("CSV quoting") {
    // table specs contain commas
    const auto r = run({"lchi", "--s", "100", "--char", "table:4:0,1,0,-1"});
    CHECK(r.code == 0);
    CHECK(r.out.find(",\"table:4:0,1,0,-1\",") != std::string::npos);
    const auto rows = read_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].size() == 9);
    CHECK(rows[1][1] == "table:4:0,1,0,-1");
}

TEST_CASE("listing all approximants keeps undefined ones as empty rows") {
    const auto r = run({"approx", "--x", "1000", "--r", "300"});
    CHECK(r.code == 0);
    const auto rows = read_csv(r.out);
    REQUIRE(rows.size() == 10);
    int undefined = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i][4].empty()) {
            ++undefined;
            CHECK(rows[i][5].starts_with("undefined: "));
        }
    CHECK(undefined == 2);  // g_r and thm_large_int need r <= x/4
    CHECK(run({"approx", "--x", "1000", "--r", "300", "--model", "g_r"}).code == 3);
}

TEST_CASE("output is identical across thread counts") {
    const std::vector<std::string> cmd{"--format", "json", "bias", "--grid", "200000:4,1000000:50,3000000:1000",
                                       "--char", "kronecker:-3", "--eta", "+1"};
    auto four = cmd;
    four.insert(four.begin(), {"--threads", "4"});
    const auto a = run(cmd), b = run(four);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = run({"count", "--x", "5000000", "--r", "9/8"});
    const auto d = run({"--threads", "3", "--sieve-segment", "4096", "count", "--x", "5000000", "--r", "9/8"});
    CHECK(c.out == d.out);
}

TEST_CASE("config file") {
    const auto cfg = temp_file("rsacount_test.cfg",
                               "# test config\n"
                               "output_format = json\n"
                               "threads=2\n"
                               "error_model = dlvp   # trailing comment\n"
                               "error_model_c = 0.5\n"
                               "quad_rel_tol = 1e-9\n"
                               "seed = 7\n");
    const auto r = run({"--config", cfg, "lchi", "--s", "100", "--char", "kronecker:-4"});
    REQUIRE(r.code == 0);
    const auto doc = Json::parse(r.out);
    CHECK(doc["meta"]["error_model"]["name"] == "dlvp");
    CHECK(doc["meta"]["error_model"]["c"] == 0.5);
    CHECK(doc["meta"]["quadrature"]["rel_tol"] == 1e-9);
    CHECK(doc["meta"]["seed"] == 7);
    CHECK(doc["rows"][0]["error_model"] == "dlvp");

    // command-line flags override the file
    const auto o = run({"--config", cfg, "--format", "csv", "--error-model", "grh", "lchi", "--s", "100", "--char",
                        "kronecker:-4"});
    REQUIRE(o.code == 0);
    const auto rows = read_csv(o.out);
    CHECK(rows[1][8] == "grh");

    const auto bad = temp_file("rsacount_bad.cfg", "colour = blue\n");
    const auto b = run({"--config", bad, "pi2", "--x", "100"});
    CHECK(b.code == 2);
    CHECK(b.err.find("colour") != std::string::npos);
    CHECK(run({"--config", temp_file("rsacount_bad2.cfg", "threads\n"), "pi2", "--x", "10"}).code == 2);
    CHECK(run({"--config", temp_file("rsacount_bad3.cfg", "threads = -2\n"), "pi2", "--x", "10"}).code == 2);
    CHECK(run({"--config", "/nonexistent/rsacount.cfg", "pi2", "--x", "10"}).code == 2);
}

TEST_CASE("json meta and tolerance flag") {
    const auto r = run({"--format", "json", "--tolerance", "1e-10", "--error-k", "50", "pi2", "--x", "10"});
    REQUIRE(r.code == 0);
    const auto doc = Json::parse(r.out);
    CHECK(doc["meta"]["quadrature"]["rel_tol"] == 1e-10);
    CHECK(doc["meta"]["error_model"]["K"] == 50.0);
    CHECK(doc["meta"]["seed"].is_null());
    CHECK(doc["meta"]["strict"] == false);
    CHECK(doc["rows"][0]["pi2"] == 2);
}
