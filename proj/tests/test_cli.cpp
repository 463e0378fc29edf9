#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <unistd.h>

#include "graphdiscord/cli.hpp"
#include "graphdiscord/matrix_io.hpp"
#include "graphdiscord/oracle.hpp"
#include "test_support.hpp"

using namespace gd;
using namespace gdt;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string graph(const std::string &name) { return (data_dir() / "graphs" / (name + ".json")).string(); }
std::string matrix(const std::string &name) { return (data_dir() / "matrices" / (name + ".json")).string(); }

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("gdisc_cli_" + std::to_string(::getpid()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string &name) const { return (path / name).string(); }
};

void write(const std::string &path, const std::string &text) { std::ofstream(path) << text; }

} // namespace

TEST_CASE("cli build") {
    TempDir tmp;
    const auto r = run({"build", graph("f1_pure_complex"), "-o", tmp.file("f1.json")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("purity          1\n") != std::string::npos);
    const auto doc = parse_matrix(read_text(tmp.file("f1.json")));
    CHECK(maxdiff(doc.matrix, F1()) <= 1e-12);
    REQUIRE(doc.partition);
    CHECK(*doc.partition == Partition{1, 1});

    const auto k8 = run({"--format", "structured", "build", graph("k8_uniform")});
    REQUIRE(k8.code == 0);
    const auto j = nlohmann::json::parse(k8.out);
    CHECK(j["dim"] == 8);
    CHECK(std::abs(j["trace"].get<double>() - 1.0) <= 1e-12);
    CHECK(j["output"].is_null());

    CHECK(run({"--convention", "signed", "build", graph("f1_pure_complex")}).code == 2);
    CHECK(run({"build", tmp.file("missing.json")}).code == 2);
    CHECK(run({"build", matrix("f5")}).code == 2);
}

TEST_CASE("cli build text output ends with the matrix document") {
    const auto r = run({"build", graph("f5_hermitian_blocks")});
    REQUIRE(r.code == 0);
    const auto pos = r.out.find("\n\n");
    REQUIRE(pos != std::string::npos);
    CHECK(maxdiff(parse_matrix(r.out.substr(pos + 2)).matrix, F5()) <= 1e-12);
}

TEST_CASE("cli check pure and psd") {
    CHECK(run({"check", "pure", graph("f1_pure_complex")}).code == 0);
    CHECK(run({"check", "pure", graph("f2_pure_signed")}).code == 0);
    CHECK(run({"check", "pure", graph("f5_hermitian_blocks")}).code == 1);

    const auto psd = run({"--format", "structured", "check", "psd", graph("f1_pure_complex")});
    REQUIRE(psd.code == 0);
    const auto j = nlohmann::json::parse(psd.out);
    CHECK(j["verdict"] == "psd");
    bool saw_dd = false;
    for(const auto &c : j["certificates"])
        if(c["name"] == "diag_dominance") {
            saw_dd = true;
            CHECK(c["passed"] == false);
        }
    CHECK(saw_dd);

    CHECK(run({"check", "psd", matrix("not_psd")}).code == 1);
    CHECK(run({"check", "discord", matrix("not_psd")}).code == 3);
    CHECK(run({"check", "pure", matrix("not_psd")}).code == 3);
}

TEST_CASE("cli check discord") {
    const auto f4 = run({"check", "discord", graph("f4_weighted_complete")});
    REQUIRE(f4.code == 0);
    for(const char *name : {"T31 ", "T32 ", "T33 ", "master "}) {
        const auto pos = f4.out.find(std::string("\n") + name);
        REQUIRE(pos != std::string::npos);
        CHECK(f4.out.substr(pos + 1, 20).find("yes") != std::string::npos);
    }

    TempDir tmp;
    write(tmp.file("random.json"), serialize_matrix(random_state(123, 4).matrix(), Partition{1, 1}));
    CHECK(run({"check", "discord", tmp.file("random.json")}).code == 1);
    CHECK(run({"--measured", "A", "check", "discord", tmp.file("random.json")}).code == 1);

    const auto structured = run({"--format", "structured", "check", "discord", graph("f4_weighted_complete")});
    REQUIRE(structured.code == 0);
    const auto j = nlohmann::json::parse(structured.out);
    CHECK(j["verdict"] == "certified_zero");

    const auto audit = run({"check", "discord", "--audit", graph("f4_weighted_complete")});
    CHECK(audit.out.find("note: oracle audit: D_A = ") != std::string::npos);

    CHECK(run({"check", "bogus", graph("f4_weighted_complete")}).code == 2);
}

TEST_CASE("cli gate") {
    TempDir tmp;
    const auto canon = serialize_matrix(parse_matrix(read_text(matrix("f5"))).matrix, Partition{1, 1});

    const auto id = run({"gate", matrix("f5"), "I(0)"});
    REQUIRE(id.code == 0);
    CHECK(id.out == canon);
    write(tmp.file("canon.json"), id.out);
    CHECK(run({"gate", tmp.file("canon.json"), "I(0)"}).out == canon);

    REQUIRE(run({"gate", matrix("f5"), "partial(q=1)", "-o", tmp.file("p1.json")}).code == 0);
    const auto twice = run({"gate", tmp.file("p1.json"), "partial(q=1)"});
    REQUIRE(twice.code == 0);
    CHECK(parse_matrix(twice.out).matrix == parse_matrix(canon).matrix);

    const auto hh = run({"gate", matrix("f5"), "H(0),H(0)"});
    REQUIRE(hh.code == 0);
    CHECK(maxdiff(parse_matrix(hh.out).matrix, F5()) <= 1e-15);

    CHECK(run({"gate", matrix("f5"), "H(0"}).code == 2);
    CHECK(run({"gate", matrix("f5"), "X(7)"}).code == 2);
    // The partial transpose of an entangled state is not a state.
    CHECK(run({"gate", graph("f3_single_edge"), "partial(q=1)"}).code == 3);
}

TEST_CASE("cli oracle") {
    CHECK(run({"oracle", matrix("bell_diagonal_0.7")}).code == 0);
    CHECK(run({"oracle", matrix("product_state")}).code == 0);
    const auto w = run({"--format", "structured", "oracle", matrix("werner_m0.5")});
    REQUIRE(w.code == 1);
    const auto j = nlohmann::json::parse(w.out);
    CHECK(std::abs(j["discord"].get<double>() - bell_diagonal_discord(-0.5, -0.5, -0.5)) <= 1e-6);
    CHECK(j["measured_side"] == "B");
    CHECK(j["grid"]["n_theta"] == 64);
    CHECK(run({"oracle", graph("f2_pure_signed")}).code == 2);
    CHECK(run({"oracle", "--n-theta", "1", matrix("werner_m0.5")}).code == 2);
}

TEST_CASE("cli exit codes for malformed inputs") {
    TempDir tmp;
    write(tmp.file("bad.json"), "{not json");
    CHECK(run({"check", "discord", tmp.file("bad.json")}).code == 2);
    write(tmp.file("nonherm.json"), serialize_matrix(mat({{0.5, 1}, {0, 0.5}})));
    CHECK(run({"check", "discord", tmp.file("nonherm.json")}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--tol", "-1", "check", "pure", graph("f1_pure_complex")}).code == 2);
}

TEST_CASE("cli structured output is deterministic") {
    for(const auto &args : std::vector<std::vector<std::string>>{
            {"--format", "structured", "check", "discord", graph("f6_bipartite")},
            {"--format", "structured", "oracle", matrix("werner_m0.5")},
            {"--format", "structured", "build", graph("f9_block_diagonal")},
            {"--format", "structured", "check", "psd", graph("f8_same_parity")}}) {
        const auto a = run(args), b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK(nlohmann::json::accept(a.out));
    }
}

TEST_CASE("cli commands compose through files") {
    TempDir tmp;
    REQUIRE(run({"build", graph("f4_weighted_complete"), "-o", tmp.file("f4.json")}).code == 0);
    REQUIRE(run({"gate", tmp.file("f4.json"), "SWAP(0,1)", "-o", tmp.file("f4s.json")}).code == 0);
    CHECK(run({"--measured", "A", "check", "discord", tmp.file("f4s.json")}).code == 0);
    CHECK(run({"oracle", tmp.file("f4s.json")}).code == 0);
}
