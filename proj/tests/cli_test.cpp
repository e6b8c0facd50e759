#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "wkc/weighted_base.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp_or_empty(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return {};
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// Invokes the installed binary with stdout/stderr captured to files.
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out_path = "cli_out_" + std::to_string(counter) + ".txt";
    fs::path err_path = "cli_err_" + std::to_string(counter) + ".txt";
    ++counter;

    std::string cmd = std::string(WKC_BIN) + " " + args + " >" + out_path.string() +
                      " 2>" + err_path.string();
    int status = std::system(cmd.c_str());

    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp_or_empty(out_path);
    r.err = slurp_or_empty(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return r;
}

std::string fixture(const std::string& name) {
    return (fs::path(WKC_FIXTURES) / name).string();
}

// Porcelain lines minus the volatile "report." section (timings, cache stats).
std::vector<std::string> result_lines(const std::string& out) {
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos < out.size()) {
        size_t nl = out.find('\n', pos);
        if (nl == std::string::npos) nl = out.size();
        std::string line = out.substr(pos, nl - pos);
        if (!line.empty() && line.rfind("report.", 0) != 0) lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

std::map<std::string, std::string> result_map(const std::string& out) {
    std::map<std::string, std::string> kv;
    for (const std::string& line : result_lines(out)) {
        size_t eq = line.find('=');
        REQUIRE(eq != std::string::npos);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& stem) : path(stem) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& sub = "") const {
        return sub.empty() ? path.string() : (path / sub).string();
    }
};

} // namespace

TEST_CASE("compile/query/models round trip on a bundle") {
    TempDir tmp("cli_case_bundle");
    std::string bundle = tmp.str("ab_bundle");

    RunResult c = run_cli("--porcelain compile --base " + fixture("ab.wb") + " -o " + bundle);
    REQUIRE(c.code == 0);
    auto ckv = result_map(c.out);
    CHECK(ckv["consistent"] == "true");
    CHECK(ckv["guards"] == "2");
    CHECK(fs::exists(fs::path(bundle) / "model.nnf"));
    CHECK(fs::exists(fs::path(bundle) / "penalties.txt"));
    CHECK(fs::exists(fs::path(bundle) / "manifest.txt"));

    RunResult q = run_cli("--porcelain query --bundle " + bundle + " --query a");
    REQUIRE(q.code == 0);
    auto qkv = result_map(q.out);
    CHECK(qkv["answer"] == "yes");
    CHECK(qkv["k"] == "1");
    CHECK(qkv["inconsistent"] == "false");

    RunResult qn = run_cli("--porcelain query --bundle " + bundle + " --query ~b");
    CHECK(qn.code == 0); // answered, just negatively
    CHECK(result_map(qn.out)["answer"] == "no");

    RunResult m = run_cli("--porcelain models --bundle " + bundle);
    REQUIRE(m.code == 0);
    auto mkv = result_map(m.out);
    CHECK(mkv["k"] == "1");
    CHECK(mkv["count"] == "1");
    CHECK(mkv["model.0"] == "a b");
}

TEST_CASE("compiled answers equal oracle answers key for key") {
    const std::string base = fixture("ab.wb");
    for (const std::string query : {"a", "b", "~b", "a & b", "a -> b"}) {
        RunResult fast = run_cli("--porcelain query --base " + base + " --query \"" + query +
                                 "\"");
        RunResult slow = run_cli("--porcelain oracle query --base " + base + " --query \"" +
                                 query + "\"");
        REQUIRE(fast.code == 0);
        REQUIRE(slow.code == 0);
        CHECK(result_lines(fast.out) == result_lines(slow.out));
    }

    RunResult fast = run_cli("--porcelain query --base " + base +
                             " --query a --evidence ~b");
    RunResult slow = run_cli("--porcelain oracle query --base " + base +
                             " --query a --evidence ~b");
    CHECK(result_lines(fast.out) == result_lines(slow.out));

    RunResult mfast = run_cli("--porcelain models --base " + base);
    RunResult mslow = run_cli("--porcelain oracle models --base " + base);
    CHECK(result_lines(mfast.out) == result_lines(mslow.out));
}

TEST_CASE("compilation to .nnf is byte-identical across runs") {
    TempDir tmp("cli_case_det");
    std::string a = tmp.str("a.nnf");
    std::string b = tmp.str("b.nnf");
    REQUIRE(run_cli("compile --cnf " + fixture("chain.cnf") + " -o " + a).code == 0);
    REQUIRE(run_cli("compile --cnf " + fixture("chain.cnf") + " -o " + b).code == 0);
    std::string bytes_a = wkc::slurp_file(a);
    CHECK(bytes_a == wkc::slurp_file(b));
    CHECK(!bytes_a.empty());

    RunResult chk = run_cli("--porcelain check --nnf " + a);
    REQUIRE(chk.code == 0);
    auto kv = result_map(chk.out);
    CHECK(kv["decomposable"] == "true");
    CHECK(kv["smooth"] == "true");
    CHECK(kv["consistent"] == "true");
}

TEST_CASE("inconsistent inputs answer with exit code 1") {
    TempDir tmp("cli_case_incons");
    std::string bad = tmp.str("bad.wb");
    {
        std::ofstream f(bad);
        f << "inf ; a\ninf ; ~a\n1 ; b\n";
    }
    RunResult m = run_cli("--porcelain models --base " + bad);
    CHECK(m.code == 1);
    auto kv = result_map(m.out);
    CHECK(kv["inconsistent"] == "true");
    CHECK(kv["k"] == "inf");
    CHECK(kv["count"] == "0");

    // domain errors (unknown query variable) are also exit 1
    RunResult q = run_cli("--porcelain query --base " + fixture("ab.wb") + " --query zz");
    CHECK(q.code == 1);
    CHECK(q.out.find("error=domain") != std::string::npos);
    CHECK(!q.err.empty());
}

TEST_CASE("usage and parse problems exit with code 2") {
    CHECK(run_cli("models --base " + fixture("ab.wb") + " --wat").code == 2);
    CHECK(run_cli("models").code == 2);                    // missing input kind
    CHECK(run_cli("").code == 2);                          // missing subcommand
    CHECK(run_cli("--help").code == 0);

    TempDir tmp("cli_case_badwb");
    std::string bad = tmp.str("bad.wb");
    {
        std::ofstream f(bad);
        f << "1 a\n"; // missing ';'
    }
    RunResult r = run_cli("--porcelain models --base " + bad);
    CHECK(r.code == 2);
    CHECK(r.out.find("error=parse") != std::string::npos);

    CHECK(run_cli("query --bundle missing_dir --query a").code == 2); // unreadable bundle
}

TEST_CASE("bundles require smoothing") {
    TempDir tmp("cli_case_nosmooth");
    RunResult r = run_cli("compile --base " + fixture("ab.wb") + " --no-smooth -o " +
                          tmp.str("b"));
    CHECK(r.code == 1);
}

TEST_CASE("diagnose ranks the inverter chain and reuses the disk cache") {
    TempDir tmp("cli_case_diag");
    std::string common = "--porcelain diagnose --system " + fixture("inverters.sys") +
                         " --obs x,~z --cache-dir " + tmp.str("cache");

    RunResult first = run_cli(common);
    REQUIRE(first.code == 0);
    CHECK(first.out.find("report.cache=miss\n") != std::string::npos);
    auto kv = result_map(first.out);
    CHECK(kv["top.count"] == "1");
    CHECK(kv["top.0"] == "ok1 & ~ok2");
    CHECK(kv["count"] == "3");
    CHECK(kv["diag.0.term"] == "ok1 & ~ok2");
    CHECK(kv["diag.1.term"] == "~ok1 & ok2");
    CHECK(kv["diag.2.term"] == "~ok1 & ~ok2");

    RunResult second = run_cli(common);
    REQUIRE(second.code == 0);
    CHECK(second.out.find("report.cache=hit\n") != std::string::npos);
    CHECK(result_lines(second.out) == result_lines(first.out));
}

TEST_CASE("diagnose agrees with its oracle within printing precision") {
    std::string args = "--porcelain diagnose --system " + fixture("inverters.sys") +
                       " --obs x,~z";
    std::string oargs = "--porcelain oracle diagnose --system " + fixture("inverters.sys") +
                        " --obs x,~z";
    for (const std::string mode : {" --mode exact", " --mode faults"}) {
        RunResult fast = run_cli(args + mode);
        RunResult slow = run_cli(oargs + mode);
        REQUIRE(fast.code == 0);
        REQUIRE(slow.code == 0);
        auto fkv = result_map(fast.out);
        auto skv = result_map(slow.out);
        REQUIRE(fkv.size() == skv.size());
        for (const auto& [key, value] : fkv) {
            REQUIRE(skv.count(key) == 1);
            const std::string& other = skv[key];
            bool numeric = key == "k" || key == "log_probability" ||
                           key.find(".score") != std::string::npos ||
                           key.find(".probability") != std::string::npos;
            if (numeric)
                CHECK(std::abs(std::atof(value.c_str()) - std::atof(other.c_str())) <= 1e-9);
            else
                CHECK(value == other);
        }
    }
}

TEST_CASE("an inconsistent observation is a structured failure") {
    TempDir tmp("cli_case_diag_bad");
    std::string sys = tmp.str("pinned.sys");
    {
        std::ofstream f(sys);
        f << "inf ; x\ninf ; ok1 -> y\nok ok1 0.1\n";
    }
    RunResult r = run_cli("--porcelain diagnose --system " + sys + " --obs ~x");
    CHECK(r.code == 1);
    auto kv = result_map(r.out);
    CHECK(kv["inconsistent"] == "true");
    CHECK(kv["count"] == "0");
    CHECK(kv["k"] == "inf");
    CHECK(kv["log_probability"] == "-inf");
}

TEST_CASE("human output carries the same facts as porcelain") {
    RunResult r = run_cli("models --base " + fixture("ab.wb"));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("k: 1") != std::string::npos);
    CHECK(r.out.find("a b") != std::string::npos);
}

TEST_CASE("a tiered-preference base answers its entailment queries") {
    // abc.wb carries weights 4/1/1/1: the first constraint outranks any
    // combination of the rest, so the single best world is ~a ~b c.
    TempDir tmp("cli_case_tiers");
    std::string bundle = tmp.str("abc_bundle");
    REQUIRE(run_cli("compile --base " + fixture("abc.wb") + " -o " + bundle).code == 0);

    RunResult m = run_cli("--porcelain models --bundle " + bundle);
    REQUIRE(m.code == 0);
    auto mkv = result_map(m.out);
    CHECK(mkv["count"] == "1");
    CHECK(mkv["model.0"] == "~a ~b c");

    RunResult q = run_cli("--porcelain query --bundle " + bundle + " --query c");
    REQUIRE(q.code == 0);
    CHECK(result_map(q.out)["answer"] == "yes");
    RunResult qa = run_cli("--porcelain query --bundle " + bundle + " --query a");
    REQUIRE(qa.code == 0);
    CHECK(result_map(qa.out)["answer"] == "no");
}

TEST_CASE("models --limit 0 prints the header and no model lines") {
    RunResult r = run_cli("--porcelain models --base " + fixture("ab.wb") + " --limit 0");
    REQUIRE(r.code == 0);
    auto kv = result_map(r.out);
    CHECK(kv["k"] == "1");
    CHECK(kv["count"] == "1");
    CHECK(kv.count("model.0") == 0);
}

TEST_CASE("a contradictory DIMACS file compiles to the false circuit") {
    TempDir tmp("cli_case_contra");
    std::string nnf = tmp.str("contra.nnf");
    RunResult c = run_cli("--porcelain compile --cnf " + fixture("contradiction.cnf") +
                          " -o " + nnf);
    REQUIRE(c.code == 0); // the compilation itself succeeded
    CHECK(result_map(c.out)["consistent"] == "false");
    REQUIRE(fs::exists(nnf));

    RunResult k = run_cli("--porcelain check --nnf " + nnf);
    CHECK(k.code == 0);
    auto kv = result_map(k.out);
    CHECK(kv["decomposable"] == "true");
    CHECK(kv["smooth"] == "true");
    CHECK(kv["consistent"] == "false");
}

TEST_CASE("the oracle refuses scopes it cannot scan") {
    TempDir tmp("cli_case_wide");
    std::string wide = tmp.str("wide.wb");
    {
        std::ofstream f(wide);
        f << "vars";
        for (int i = 0; i < 25; ++i) f << " x" << i;
        f << "\n1 ; x0\n";
    }
    RunResult r = run_cli("--porcelain oracle models --base " + wide);
    CHECK(r.code == 1);
    CHECK(r.out.find("error=domain") != std::string::npos);
}
