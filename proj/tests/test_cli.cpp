#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "padml/cli.hpp"
#include "padml/io.hpp"

using namespace padml;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/padml-test-") + name;
    std::ofstream f(path, std::ios::trunc);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("vp command") {
    auto r = run({"vp", "-p", "3", "9"});
    CHECK(r.code == 0);
    CHECK(r.out == "v=2 |x|=1/9\n");

    CHECK(run({"vp", "-p", "3", "0"}).out == "v=inf |x|=0\n");

    auto bad = run({"vp", "-p", "4", "9"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("not prime") != std::string::npos);

    CHECK(run({"vp", "9"}).code == 2);        // missing prime
    CHECK(run({"vp"}).code == 1);             // missing argument
    CHECK(run({"warp", "9"}).code == 1);      // unknown subcommand
    CHECK(run({"vp", "-p", "3", "x"}).code == 2);
}

TEST_CASE("dist command") {
    CHECK(run({"dist", "-p", "3", "1", "28"}).out == "d=1/27\n");
    CHECK(run({"dist", "-p", "2", "3/2", "1"}).out == "d=2\n");
    auto j = run({"dist", "-p", "3", "1", "10", "--json"});
    CHECK(nlohmann::json::parse(j.out).at("distance") == "1/9");
}

TEST_CASE("fit command on the bundled four-solution dataset") {
    auto r = run({"fit", "--bundled", "padic-four-solution", "-p", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("loss: 5/2") != std::string::npos);
    CHECK(r.out.find("optimal models (4)") != std::string::npos);

    auto j = run({"fit", "--bundled", "padic-four-solution", "-p", "2", "--json"});
    FitReport report = parse_report(j.out);
    CHECK(report.loss == Rational::parse("5/2"));
    CHECK(report.models.size() == 4);
}

TEST_CASE("fit command reads CSV files") {
    std::string path = write_temp("identity.csv", "0,0\n1,1\n2,2\n3,3\n4,4\n");
    auto r = run({"fit", path, "-p", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("loss: 0") != std::string::npos);
    CHECK(r.out.find("y = x") != std::string::npos);

    CHECK(run({"fit", "/tmp/padml-no-such-file.csv", "-p", "3"}).code == 2);

    std::string with_header = write_temp("header.csv", "x,y\n0,0\n1,1\n2,2\n3,3\n4,4\n");
    auto h = run({"fit", with_header, "-p", "3", "--header"});
    CHECK(h.code == 0);
    CHECK(h.out.find("loss: 0") != std::string::npos);
}

TEST_CASE("fit exit codes distinguish parse and precondition errors") {
    std::string degenerate = write_temp("degenerate.csv", "7,1\n7,1\n7,1\n");
    auto r = run({"fit", degenerate, "-p", "3"});
    CHECK(r.code == 3);
    CHECK(r.err.find("certificate") != std::string::npos);

    std::string ragged = write_temp("ragged.csv", "1,2\n3\n");
    CHECK(run({"fit", ragged, "-p", "3"}).code == 2);
}

TEST_CASE("fit output is identical across worker counts") {
    auto one = run({"fit", "--bundled", "zorgette", "-p", "409", "--threads", "1", "--json"});
    auto four = run({"fit", "--bundled", "zorgette", "-p", "409", "--threads", "4", "--json"});
    CHECK(one.code == 0);
    CHECK(one.out == four.out);
}

TEST_CASE("descend command") {
    std::string path = write_temp("identity.csv", "0,0\n1,1\n2,2\n3,3\n4,4\n");
    auto r = run({"descend", path, "-p", "3", "--model", "0,0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("next: y = x") != std::string::npos);

    auto j = run({"descend", path, "-p", "3", "--model", "0,0", "--json"});
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("chosen_index") == 1);
    CHECK(parsed.at("step_size") == "1");
    CHECK(parsed.at("loss_after") == "0");

    // Already optimal: precondition failure.
    CHECK(run({"descend", path, "-p", "3", "--model", "1,0"}).code == 3);
}

TEST_CASE("polyfit and interp commands") {
    std::string path = write_temp("square.csv", "0,0\n1,1\n2,4\n");
    auto r = run({"polyfit", path, "-p", "5", "--degree", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("x^2") != std::string::npos);
    CHECK(r.out.find("loss: 0") != std::string::npos);

    auto i = run({"interp", path});
    CHECK(i.code == 0);
    CHECK(i.out == "x^2\n");

    auto j = run({"interp", path, "--json"});
    CHECK(nlohmann::json::parse(j.out).at("coefficients") == "0,0,1");
}

TEST_CASE("residual-check command") {
    auto r = run({"residual-check", "-P", "0,0,1", "--approx=-2,3", "--points", "0,1,2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("roots in S (2): 1 2") != std::string::npos);

    auto all = run({"residual-check", "-P", "1,4", "-Q", "1,4", "--points", "0,1,2"});
    CHECK(all.out.find("roots in S (3)") != std::string::npos);
}

TEST_CASE("encode, decode and similar on the bundled tree") {
    auto r = run({"encode", "mammoth.n.01", "--bundled-tree", "-p", "409"});
    CHECK(r.code == 0);
    CHECK(r.out.find("path=1.2.3.37.5.4.4.5.3.8.4.17.1.4") != std::string::npos);

    auto j = run({"encode", "mammoth.n.01", "--bundled-tree", "-p", "409", "--json"});
    auto code = nlohmann::json::parse(j.out);
    std::string value = code.at("value");

    auto d = run({"decode", value, "-p", "409"});
    CHECK(d.out == "path=1.2.3.37.5.4.4.5.3.8.4.17.1.4\n");

    auto s = run({"similar", "mammoth.n.01", "dog.n.01", "--bundled-tree", "-p", "409"});
    CHECK(s.code == 0);
    CHECK(s.out.find("409^-11") != std::string::npos);
    CHECK(s.out.find("depth=11") != std::string::npos);

    auto s2 = run({"similar", "mammoth.n.01", "indian_elephant.n.01", "--bundled-tree", "-p",
                   "409", "--json"});
    auto sim = nlohmann::json::parse(s2.out);
    CHECK(sim.at("common_ancestor_depth") == 13);
    CHECK(Rational::parse(sim.at("distance").get<std::string>()) ==
          pow_rational(Integer(409), -13));
}

TEST_CASE("encode with a user tree file and default prime") {
    std::string path =
        write_temp("tree.json", R"({"label":"r","children":[{"label":"a"},{"label":"b"}]})");
    auto r = run({"encode", "b", "--tree", path});
    CHECK(r.code == 0);
    CHECK(r.out == "path=2 value=2 p=3\n");
    CHECK(run({"encode", "zebra", "--tree", path}).code == 2);
}

TEST_CASE("zorgette command") {
    auto r = run({"zorgette"});
    CHECK(r.code == 0);
    CHECK(r.out.find("x = y + 53574285543133366239295624009") != std::string::npos);
    CHECK(r.out.find("verdict: robot 3 faulty") != std::string::npos);
    CHECK(r.out.find("verdict: robot 2 faulty (incorrect)") != std::string::npos);

    // A neighbouring large prime still implicates robot 3.
    auto other = run({"zorgette", "-p", "419"});
    CHECK(other.code == 0);
    CHECK(other.out.find("verdict: robot 3 faulty") != std::string::npos);

    auto j = run({"zorgette", "--json"});
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("padic").at("verdicts")[0] == "robot 3 faulty");
    CHECK(parsed.at("ols").at("verdict") == "robot 2 faulty (incorrect)");
    FitReport report = parse_report(parsed.at("padic").dump());
    CHECK(report.models.size() == 1);
}

TEST_CASE("dump round-trips through the io parsers") {
    auto r = run({"dump", "--bundled", "zorgette"});
    CHECK(r.code == 0);
    Dataset d = parse_dataset(r.out);
    CHECK(d == bundled("zorgette").payload);

    auto t = run({"dump", "--bundled-tree"});
    CHECK(t.code == 0);
    CHECK(t.out == std::string(bundled_taxonomy_fragment()));

    auto l = run({"dump", "--list"});
    CHECK(l.out.find("zorgette") != std::string::npos);

    CHECK(run({"dump", "--bundled", "nope"}).code == 2);
    CHECK(run({"dump"}).code == 2);
}

TEST_CASE("help exits zero") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 1);
}
