#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "photatom/output.hpp"

using namespace photatom;

namespace {

Document sample_doc() {
    Document doc;
    doc.config = ordered_json{{"command", "demo"}, {"eta", 10.0}};
    Table t;
    t.name = "t";
    t.columns = {"x", "count", "note"};
    t.rows.push_back({0.1 + 0.2, 3, "plain"});
    t.rows.push_back({1.5, -1, "hi, there"});
    t.rows.push_back(
        {std::numeric_limits<double>::quiet_NaN(), 0, "quote\"d"});
    doc.tables.push_back(t);
    doc.diagnostics = ordered_json{{"norm", 1.0000000000004}};
    return doc;
}

}  // namespace

TEST_CASE("format12 prints 12 significant digits") {
    CHECK(format12(0.1) == "0.1");
    CHECK(format12(1.0) == "1");
    CHECK(format12(-2.5) == "-2.5");
    CHECK(format12(1.0 / 3.0) == "0.333333333333");
    CHECK(format12(123456.789012345) == "123456.789012");
    CHECK(format12(0.1 + 0.2) == "0.3");
    CHECK(format12(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("round12 is idempotent") {
    for (double x : {1.0 / 3.0, 3.14159265358979, 1e-17, 0.0, -0.0,
                     6.022e23, 0.1 + 0.2}) {
        const double once = round12(x);
        CHECK(round12(once) == once);
    }
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(std::isnan(round12(std::numeric_limits<double>::quiet_NaN())));
}

TEST_CASE("csv carries metadata lines and quoted cells") {
    const std::string csv = to_csv(sample_doc());
    CHECK(csv.find("# photatom 1.0.0\n") == 0);
    CHECK(csv.find("# config {\"command\":\"demo\",\"eta\":10.0}") !=
          std::string::npos);
    CHECK(csv.find("# diagnostics {\"norm\":1.0}") != std::string::npos);
    CHECK(csv.find("# table t\n") != std::string::npos);
    CHECK(csv.find("x,count,note\n") != std::string::npos);
    CHECK(csv.find("0.3,3,plain\n") != std::string::npos);
    CHECK(csv.find("1.5,-1,\"hi, there\"\n") != std::string::npos);
    CHECK(csv.find("nan,0,\"quote\"\"d\"\n") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);  // LF endings only
    CHECK(csv.back() == '\n');
}

TEST_CASE("json document has the full structure") {
    const std::string text = to_json(sample_doc());
    ordered_json root = ordered_json::parse(text);
    CHECK(root["tool"] == "photatom");
    CHECK(root["version"] == "1.0.0");
    CHECK(root["config"]["eta"] == 10.0);
    CHECK(root["results"]["t"]["columns"].size() == 3);
    CHECK(root["results"]["t"]["rows"].size() == 3);
    CHECK(root["results"]["t"]["rows"][0][0] == 0.3);
    CHECK(root["results"]["t"]["rows"][0][1] == 3);
    CHECK(root["results"]["t"]["rows"][2][0].is_null());  // NaN -> null
    CHECK(root["diagnostics"]["norm"] == 1.0);
    CHECK(text.back() == '\n');
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("both serializations agree after rounding") {
    Document doc = sample_doc();
    const std::string csv = to_csv(doc);
    ordered_json root = ordered_json::parse(to_json(doc));
    // the csv text of the first cell parses to the json value exactly
    const double json_val = root["results"]["t"]["rows"][0][0];
    const std::string cell = csv.substr(csv.find("0.3,"), 3);
    CHECK(std::stod(cell) == json_val);
}
