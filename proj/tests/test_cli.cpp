#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string bin() { return MFLAB_BIN; }

int run(const std::string& args, std::string* out = nullptr)
{
    std::string tmp = "cli_out.tmp";
    std::string cmd = bin() + " " + args + " > " + tmp + " 2>&1";
    int rc = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(tmp);
        std::stringstream ss;
        ss << in.rdbuf();
        *out = ss.str();
    }
    std::remove(tmp.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("ext reports a nonvanishing stable dimension")
{
    std::string out;
    int rc = run("ext --f x*y --M \"S{1}\" --N \"S{2}\"", &out);
    CHECK(rc == 0);
    CHECK(out.find("\"stable_dim\": 1") != std::string::npos);
    CHECK(out.find("\"kind\": \"ext\"") != std::string::npos);
}

TEST_CASE("ct-check exits 3 on a refuted equation")
{
    std::string out;
    int rc = run("ct-check --f \"x*(x*x+y*y*y)\"", &out);
    CHECK(rc == 3);
    CHECK(out.find("\"overall\": \"refuted\"") != std::string::npos);
}

TEST_CASE("usage errors exit 1")
{
    CHECK(run("ext --f x*y") == 1);
    CHECK(run("no-such-command") == 1);
}

TEST_CASE("iso distinguishes and identifies")
{
    CHECK(run("iso --f x*y --M \"S{1}\" --N \"S{2}\"") == 3);
    CHECK(run("iso --f x*y --M \"syz(S{1})\" --N \"S{2}\"") == 0);
}

TEST_CASE("suite output is deterministic byte for byte")
{
    std::string a = "suite_a.json", b = "suite_b.json";
    REQUIRE(run("suite --config " + std::string(MFLAB_SUITE) + " --out " + a) == 0);
    REQUIRE(run("suite --config " + std::string(MFLAB_SUITE) + " --out " + b) == 0);
    std::string sa = slurp(a), sb = slurp(b);
    CHECK(!sa.empty());
    CHECK(sa == sb);
    std::remove(a.c_str());
    std::remove(b.c_str());
}
