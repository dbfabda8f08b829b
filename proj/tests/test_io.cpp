#include <algorithm>
#include <filesystem>

#include "doctest.h"
#include "oracles.hpp"
#include "ordyn/corpus.hpp"
#include "ordyn/io.hpp"

using namespace ordyn;

namespace {

std::string where_of(const std::string& text) {
  try {
    parse_system(text);
  } catch (const SchemaError& e) {
    return e.where;
  }
  return "<accepted>";
}

std::string lattice_where_of(const std::string& text) {
  try {
    parse_lattice(text);
  } catch (const SchemaError& e) {
    return e.where;
  }
  return "<accepted>";
}

std::vector<std::string> names(const Json& j) {
  std::vector<std::string> out;
  for (const auto& s : j) out.push_back(s.get<std::string>());
  return out;
}

std::vector<std::string> names(oracle::Set s, const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x < labels.size(); ++x)
    if (s >> x & 1) out.push_back(labels[x]);
  return out;
}

const std::string kGolden = std::string(ORDYN_TEST_DIR) + "/golden/grad-smr.json";

}  // namespace

TEST_SUITE("io") {

TEST_CASE("syntax errors carry line and column") {
  CHECK(where_of("{\"points\": [\"a\"],\n  \"map\": [\"a\" \"a\"]}") == "2:17");
  CHECK(where_of("{\"points\": [\"a\"],") == "1:18");
}

TEST_CASE("field errors carry a JSON pointer") {
  const std::string disc = R"("topology": "discrete")";
  CHECK(where_of(R"({"points": ["a"], "map": ["a"]})") == "/topology");
  CHECK(where_of(R"({"points": ["a"], )" + disc + "}") == "/map");
  CHECK(where_of(R"({"points": ["a", "b"], )" + disc + R"(, "map": ["a", "z"]})") == "/map/1");
  CHECK(where_of(R"({"points": ["a", "b"], )" + disc + R"(, "map": ["a"]})") == "/map");
  CHECK(where_of(R"({"points": ["a", "b"], )" + disc + R"(, "map": [0, 5]})") == "/map/1");
  CHECK(where_of(R"({"points": ["a", "a"], )" + disc + R"(, "map": [0, 0]})") == "/points/1");
  CHECK(where_of(R"({"points": [], )" + disc + R"(, "map": []})") == "/points");
  CHECK(where_of(R"({"points": ["a", "b"], "topology": {"leq": [["a", "q"]]}, "map": [0, 1]})") ==
        "/topology/leq/0/1");
  CHECK(where_of(R"({"points": ["a", "b"], "topology": {"opens": [["a"]]}, "map": [0, 1]})") ==
        "/topology/opens");
  CHECK(where_of(R"({"points": ["a"], )" + disc + R"(, "map": ["a"], "query": ["x"]})") == "/query/0");
  CHECK(where_of(R"({"points": ["a"], )" + disc + R"(, "map": ["a"]})") == "<accepted>");
}

TEST_CASE("lattice inputs are checked for order and distributivity") {
  CHECK(lattice_where_of(R"({"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]})") == "/elements/0");
  const std::string m3 =
      R"({"elements": ["a", "b", "c", "d", "e"],
          "leq": [["a", "b"], ["a", "c"], ["a", "d"], ["b", "e"], ["c", "e"], ["d", "e"]]})";
  CHECK(lattice_where_of(m3) == "/elements/1");
  const LatticeInput l = parse_lattice(R"({"poset": {"elements": ["p", "q"], "leq": []}})");
  CHECK(l.lattice.size() == 4);
}

TEST_CASE("open families and preorders describe the same topology") {
  const SystemInput a = parse_system(
      R"({"points": ["s", "m", "r"], "topology": {"leq": [["s", "m"], ["m", "r"]]}, "map": ["s", "s", "r"]})");
  const SystemInput b = parse_system(
      R"({"points": ["s", "m", "r"], "topology": {"opens": [[], ["r"], ["m", "r"], ["s", "m", "r"]]},
          "map": ["s", "s", "r"]})");
  CHECK(analysis_to_json(a, analyze(a.system))["att"] == analysis_to_json(b, analyze(b.system))["att"]);
}

TEST_CASE("golden report is reproduced byte for byte") {
  const std::string text = read_file(kGolden);
  const Json golden = parse_json(text);
  const SystemInput s = system_from_json(golden["system"]);
  CHECK(analysis_to_json(s, analyze(s.system)).dump(2) + "\n" == text);
  CHECK(revalidate_report(golden).empty());
}

TEST_CASE("golden values agree with brute-force evaluation") {
  const Json golden = parse_json(read_file(kGolden));
  const SystemInput s = system_from_json(golden["system"]);
  const oracle::Sys o(s.system);
  const auto& labels = s.system.labels();
  std::vector<std::vector<std::string>> att;
  for (oracle::Set a : o.attractors()) att.push_back(names(a, labels));
  std::vector<std::vector<std::string>> att_golden;
  for (const auto& a : golden["att"]["sets"]) att_golden.push_back(names(a));
  CHECK(att_golden == att);
  CHECK(names(golden["recurrent_components"]["support"]) == names(o.recurrent_set(), labels));
  CHECK(golden["anbhd_count"].get<std::size_t>() == o.anbhds().size());
  CHECK(golden["hypotheses"]["continuous"] == true);
  CHECK(golden["hypotheses"]["closed"] == false);
}

TEST_CASE("tampered reports fail revalidation") {
  Json golden = parse_json(read_file(kGolden));
  golden["att"]["sets"][1] = Json::array({"s"});
  CHECK_FALSE(revalidate_report(golden).empty());
}

TEST_CASE("every corpus entry matches its expected values") {
  for (const auto& e : corpus()) {
    INFO(e.name);
    if (e.expected.empty()) continue;
    CHECK(json_mismatch(parse_json(e.expected), corpus_output(e)) == "");
  }
}

TEST_CASE("partial matcher reports the first differing pointer") {
  const Json actual = parse_json(R"({"a": {"b": [1, 2]}, "c": 3})");
  CHECK(json_mismatch(parse_json(R"({"a": {"b": [1, 2]}})"), actual) == "");
  CHECK(json_mismatch(parse_json(R"({"a": {"b": [1, 3]}})"), actual) == "/a/b/1");
  CHECK(json_mismatch(parse_json(R"({"d": 1})"), actual) == "/d");
}

TEST_CASE("DOT output draws the Hasse diagram bottom to top") {
  const SystemInput s = parse_system(find_example("id3")->payload);
  const Analysis a = analyze(s.system);
  std::vector<std::string> ids;
  for (PointSet x : a.att.sets) ids.push_back(format_set(x, s.system.labels()));
  const std::string dot = dot_lattice(a.att.lattice, ids, "Att");
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 12);  // cube edges
  const std::string rc = dot_components(a.rc, s.system.labels(), "RC");
  CHECK(rc.find("shape=record") != std::string::npos);
  CHECK(rc.find("->") == std::string::npos);
}

TEST_CASE("atomic writes leave no temporary file") {
  const auto dir = std::filesystem::temp_directory_path() / "ordyn_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.json").string();
  write_file_atomic(path, "{}\n");
  CHECK(read_file(path) == "{}\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}

}
