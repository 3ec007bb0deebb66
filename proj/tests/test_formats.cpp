#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gsckit/rational.hpp"
#include "gsckit/graph.hpp"
#include "gsckit/complex2.hpp"
#include "gsckit/flowmatrix.hpp"
#include "gsckit/colour.hpp"
#include "gsckit/generate.hpp"

using namespace gsckit;

namespace {

std::string bin() {
    const char* b = std::getenv("GSCKIT_BIN");
    return b ? b : "";
}

int run(const std::string& cmd) { return std::system(cmd.c_str()); }

int exit_code(int status) { return WEXITSTATUS(status); }

void put(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("rationals") {
    CHECK(Rat::parse("3/6") == Rat(1, 2));
    CHECK(Rat::parse("-2") == Rat(-2));
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK(Rat(1, 3).str() == "1/3");
    CHECK_THROWS_AS(Rat(1, 0), input_error);
    CHECK_THROWS_AS(Rat::parse("x"), input_error);
}

TEST_CASE("graph json carries both spot families") {
    Rng rng(42);
    auto inst = random_property_p_pair(rng, 10);
    Json j = graph_to_json(inst.g, &inst.red, &inst.blue);
    SpotSet r2, b2;
    Graph g2 = graph_from_json(j, &r2, &b2);
    CHECK(r2.spots == inst.red.spots);
    CHECK(b2.spots == inst.blue.spots);
    CHECK(graph_to_json(g2, &r2, &b2) == j);
}

TEST_CASE("schedule json round trip") {
    CollapseSchedule s;
    s.steps = {FreePair{1, 3, 7}, FreePair{0, 2, 3}};
    auto s2 = CollapseSchedule::from_json(s.to_json());
    CHECK(s2.steps == s.steps);
}

TEST_CASE("cli: check-p and colour-change round trip") {
    if (bin().empty()) return; // only meaningful under ctest
    std::string dir = "/tmp/gsckit-fmt";
    run(("mkdir -p " + dir).c_str());
    put(dir + "/c4.json", R"({
      "vertices": [1,2,3,4],
      "edges": [{"id":1,"u":1,"v":2},{"id":2,"u":2,"v":3},{"id":3,"u":3,"v":4},{"id":4,"u":4,"v":1}],
      "spots": {"red":[1], "blue":[3]}
    })");
    CHECK(exit_code(run(bin() + " graph check-p --in " + dir + "/c4.json --out " + dir +
                        "/p.json")) == 0);
    CHECK(exit_code(run(bin() + " colour-change --in " + dir + "/c4.json --out " + dir +
                        "/trace.json")) == 0);
    auto trace = Json::parse(slurp(dir + "/trace.json"));
    CHECK(trace.at("verified").get<bool>());
    CHECK(trace.at("trace").size() == 1);

    // R = B: empty trace, exit 0
    put(dir + "/same.json", R"({
      "vertices": [1,2,3],
      "edges": [{"id":1,"u":1,"v":2},{"id":2,"u":2,"v":3},{"id":3,"u":3,"v":1}],
      "spots": {"red":[2], "blue":[2]}
    })");
    CHECK(exit_code(run(bin() + " colour-change --in " + dir + "/same.json --out " + dir +
                        "/t2.json")) == 0);
    CHECK(Json::parse(slurp(dir + "/t2.json")).at("trace").empty());
}

TEST_CASE("cli: malformed json exits 2 with position") {
    if (bin().empty()) return;
    std::string dir = "/tmp/gsckit-fmt";
    run(("mkdir -p " + dir).c_str());
    put(dir + "/bad.json", "{\n  \"vertices\": [1,\n}");
    CHECK(exit_code(run(bin() + " graph check-p --in " + dir + "/bad.json --out - 2>" + dir +
                        "/err.txt")) == 2);
    auto err = slurp(dir + "/err.txt");
    CHECK(err.find("line") != std::string::npos);
    CHECK(err.find("column") != std::string::npos);
}

TEST_CASE("cli: fuzz determinism, byte identical reports") {
    if (bin().empty()) return;
    std::string dir = "/tmp/gsckit-fmt";
    run(("mkdir -p " + dir).c_str());
    CHECK(exit_code(run(bin() + " fuzz colour --seed 7 --count 25 --out " + dir + "/f1.json")) == 0);
    CHECK(exit_code(run(bin() + " fuzz colour --seed 7 --count 25 --out " + dir + "/f2.json")) == 0);
    CHECK(slurp(dir + "/f1.json") == slurp(dir + "/f2.json"));
    // unknown suite: exit 2
    CHECK(exit_code(run(bin() + " fuzz nosuch --out - 2>/dev/null")) == 2);
    // injected violations: flagged, exit 1
    CHECK(exit_code(run(bin() + " fuzz inject --seed 3 --count 10 --out " + dir + "/inj.json")) ==
          1);
    auto inj = Json::parse(slurp(dir + "/inj.json"));
    CHECK(inj.at("failures").get<std::size_t>() > 0);
    for (const auto& c : inj.at("cases"))
        if (!c.at("pass").get<bool>())
            CHECK(c.at("detail").get<std::string>().find("TAMPERED TRACE ACCEPTED") ==
                  std::string::npos);
}

TEST_CASE("cli: gsc on a collapsible toy") {
    if (bin().empty()) return;
    std::string dir = "/tmp/gsckit-fmt";
    run(("mkdir -p " + dir).c_str());
    auto pc = make_paired_complex({{0, 0}, {1, 0}});
    put(dir + "/toy.json", complex_to_json(pc.k, &pc.spots).dump(2));
    CHECK(exit_code(run(bin() + " gsc --in " + dir + "/toy.json --out " + dir + "/cert.json")) == 0);
    auto cert = Json::parse(slurp(dir + "/cert.json"));
    CHECK(cert.at("gsc").get<bool>());
    CHECK(cert.at("order").size() == 2);
}

TEST_CASE("cli: double punchlines on the toy square") {
    if (bin().empty()) return;
    std::string dir = "/tmp/gsckit-fmt";
    run(("mkdir -p " + dir).c_str());
    TwoComplex x2;
    for (int v : {1, 2, 3, 4}) x2.skeleton.add_vertex(v);
    x2.skeleton.add_edge(1, 1, 2);
    x2.skeleton.add_edge(2, 2, 3);
    x2.skeleton.add_edge(3, 3, 4);
    x2.skeleton.add_edge(4, 4, 1);
    x2.add_face(1, {WalkStep{1, 1}, WalkStep{2, 1}, WalkStep{3, 1}, WalkStep{4, 1}},
                FaceLabel::Gamma);
    SpotSet red, blue;
    red.colour = Colour::Red;
    red.spots = {1};
    blue.colour = Colour::Blue;
    blue.spots = {3};
    Json in;
    in["complex"] = complex_to_json(x2, &red, &blue);
    in["delta_faces"] = {1};
    put(dir + "/sq.json", in.dump(2));
    CHECK(exit_code(run(bin() + " double punchlines --in " + dir + "/sq.json --out " + dir +
                        "/pl.json")) == 0);
    auto pl = Json::parse(slurp(dir + "/pl.json"));
    CHECK(pl.at("punchlineA").get<bool>());
    CHECK(pl.at("punchlineB").get<bool>());
    CHECK(pl.at("punchlineC").get<bool>());
}
