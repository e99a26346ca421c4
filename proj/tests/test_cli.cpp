#include "maxmatch/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = maxmatch::run_cli(args, in, out, err);
  return CliRun{code, out.str(), err.str()};
}

class TempDir {
public:
  TempDir() {
    root_ = fs::temp_directory_path() / fs::path("maxmatch_cli_test_" + std::to_string(counter()++));
    fs::create_directories(root_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(root_, ec);
  }
  std::string file(const std::string& name, const std::string& content) {
    fs::path p = root_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

private:
  static int& counter() {
    static int c = 0;
    return c;
  }
  fs::path root_;
};

const char* kPaperGold =
    "S There is no a doubt , tracking system has brought many benefits in this information age .\n"
    "A 3 5|||Other|||doubt|||REQUIRED|||-NONE-|||0\n"
    "A 7 8|||SVA|||systems|||REQUIRED|||-NONE-|||0\n"
    "A 8 9|||SVA|||have|||REQUIRED|||-NONE-|||0\n";

const char* kPaperSystem =
    "There is no doubt , tracking system has brought many benefits in this information age .\n";

}  // namespace

TEST_CASE("score renders the worked example line") {
  TempDir dir;
  auto gold = dir.file("gold.m2", kPaperGold);
  auto sys = dir.file("sys.txt", kPaperSystem);
  CliRun r = run({"score", gold, sys});
  CHECK(r.code == 0);
  CHECK(r.out == "R 33.33  P 100.00  F1 50.00\n");
  CHECK(r.err.empty());

  SUBCASE("output bytes are identical across runs") {
    CliRun again = run({"score", gold, sys});
    CHECK(again.out == r.out);
  }
  SUBCASE("stdin works through '-'") {
    CliRun piped = run({"score", gold, "-"}, kPaperSystem);
    CHECK(piped.code == 0);
    CHECK(piped.out == r.out);
  }
  SUBCASE("json output round-trips the exact tallies") {
    CliRun j = run({"score", gold, sys, "--format", "json"});
    CHECK(j.code == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["systems"][0]["overall"]["matches"] == 1);
    CHECK(parsed["systems"][0]["overall"]["gold"] == 3);
    CHECK(parsed["systems"][0]["overall"]["recall"]["num"] == 1);
    CHECK(parsed["systems"][0]["overall"]["recall"]["den"] == 3);
  }
}

TEST_CASE("score ranks several systems with shared ranks") {
  TempDir dir;
  auto gold = dir.file("gold.m2", kPaperGold);
  auto perfect = dir.file("good.txt",
                          "There is no doubt , tracking systems have brought many benefits in "
                          "this information age .\n");
  auto partial = dir.file("partial.txt", kPaperSystem);
  auto partial2 = dir.file("partial2.txt", kPaperSystem);

  CliRun r = run({"score", gold, perfect, partial, partial2});
  CHECK(r.code == 0);
  CHECK(r.out.find("Rank") != std::string::npos);
  CHECK(r.out.find("1     " + fs::path(perfect).string()) != std::string::npos);
  // The two identical systems share rank 2.
  CHECK(r.out.find("2     " + fs::path(partial).string()) != std::string::npos);
  CHECK(r.out.find("2     " + fs::path(partial2).string()) != std::string::npos);
}

TEST_CASE("score rejects misaligned corpora with both counts named") {
  TempDir dir;
  auto gold = dir.file("gold.m2", "S a b\n\nS c d\n\nS e f\n");
  auto sys = dir.file("sys.txt", "a b\nc d\n");
  CliRun r = run({"score", gold, sys});
  CHECK(r.code == 2);
  CHECK(r.err.find("3") != std::string::npos);
  CHECK(r.err.find("2") != std::string::npos);
}

TEST_CASE("score rejects duplicate system paths") {
  TempDir dir;
  auto gold = dir.file("gold.m2", "S a\n");
  auto sys = dir.file("sys.txt", "a\n");
  CliRun r = run({"score", gold, sys, sys});
  CHECK(r.code == 2);
}

TEST_CASE("score handles parse failures with exit 2") {
  TempDir dir;
  auto gold = dir.file("gold.m2", "A 0 1|||X|||y|||REQUIRED|||-NONE-|||0\n");
  auto sys = dir.file("sys.txt", "a\n");
  CliRun r = run({"score", gold, sys});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);

  CliRun missing = run({"score", dir.file("x", "") + ".does-not-exist", sys});
  CHECK(missing.code == 2);
}

TEST_CASE("score with alternatives picks the better annotator per sentence") {
  TempDir dir;
  auto gold = dir.file("gold.m2",
                       "S a b c\n"
                       "A 0 1|||Nn|||x|||REQUIRED|||-NONE-|||0\n"
                       "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||1\n");
  auto sys = dir.file("sys.txt", "a b c\n");
  CliRun with_alts = run({"score", gold, sys});
  CHECK(with_alts.out == "R 100.00  P 100.00  F1 100.00\n");

  CliRun without = run({"score", gold, sys, "--no-alternatives"});
  CHECK(without.out == "R 0.00  P 100.00  F1 0.00\n");

  SUBCASE("--no-alternatives falls back to the first set without annotator 0") {
    auto gold1 = dir.file("gold1.m2",
                          "S a b c\n"
                          "A 0 1|||Nn|||x|||REQUIRED|||-NONE-|||2\n"
                          "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||3\n");
    CliRun r = run({"score", gold1, sys, "--no-alternatives"});
    // Annotator 2 is first; its one edit goes unmatched.
    CHECK(r.out == "R 0.00  P 100.00  F1 0.00\n");
  }
}

TEST_CASE("score --per-type works from gold T lines alone") {
  TempDir dir;
  auto gold = dir.file("gold.m2",
                       "S the device happy\n"
                       "T DT NN JJ\n"
                       "A 1 2|||Nn|||devices|||REQUIRED|||-NONE-|||0\n");
  auto sys = dir.file("sys.txt", "device happy\n");
  CliRun r = run({"score", gold, sys, "--per-type"});
  CHECK(r.code == 0);
  // The unmatched deletion of "the" (DT) classifies as ArtOrDet from the
  // source-side tags; the missed Nn gold stays in Nn.
  CHECK(r.out.find("ArtOrDet   100.00    0.00    0.00") != std::string::npos);
  CHECK(r.out.find("Nn           0.00  100.00    0.00") != std::string::npos);
}

TEST_CASE("convert counts offsets in code points") {
  TempDir dir;
  auto sgml = dir.file("g.sgml",
                       "<MISTAKE start_par=\"0\" start_off=\"5\" end_par=\"0\" end_off=\"11\">\n"
                       "<TYPE>Nn</TYPE>\n"
                       "<CORRECTION>caf\xC3\xA9s</CORRECTION>\n"
                       "</MISTAKE>\n");
  // "caf\xC3\xA9" is 4 code points; the span 5..11 covers "caf\xC3\xA9 bar".
  auto raw = dir.file("g.txt", "good caf\xC3\xA9 bar here\n");
  CliRun r = run({"convert", sgml, raw});
  CHECK(r.code == 0);
  CHECK(r.out.find("A 1 3|||Nn|||caf\xC3\xA9s|||REQUIRED|||-NONE-|||0\n") != std::string::npos);
}

TEST_CASE("score --per-type uses gold T lines and --tags for bucketing") {
  TempDir dir;
  auto gold = dir.file("gold.m2",
                       "S the device prefers red\n"
                       "T DT NN VBZ JJ\n"
                       "A 1 2|||Nn|||devices|||REQUIRED|||-NONE-|||0\n");
  auto sys = dir.file("sys.txt", "the devices prefer red\n");
  auto tags = dir.file("sys.m2t", "S the devices prefer red\nT DT NNS VBP JJ\n");
  CliRun r = run({"score", gold, sys, "--per-type", "--tags", tags});
  CHECK(r.code == 0);
  CHECK(r.out.find("Type") != std::string::npos);
  CHECK(r.out.find("Nn") != std::string::npos);
  CHECK(r.out.find("Vform/SVA") != std::string::npos);

  SUBCASE("--tags requires a single system") {
    auto sys2 = dir.file("sys2.txt", "the devices prefer red\n");
    CliRun multi = run({"score", gold, sys, sys2, "--per-type", "--tags", tags});
    CHECK(multi.code == 2);
  }
  SUBCASE("tag counts must match the system tokens") {
    auto bad = dir.file("bad.m2t", "S the devices prefer\nT DT NNS VBP\n");
    CliRun mismatch = run({"score", gold, sys, "--per-type", "--tags", bad});
    CHECK(mismatch.code == 2);
  }
}

TEST_CASE("stats reports the type distribution") {
  TempDir dir;
  auto gold = dir.file("gold.m2",
                       "S a b c d\n"
                       "A 0 1|||ArtOrDet||||||REQUIRED|||-NONE-|||0\n"
                       "A 1 2|||ArtOrDet|||x|||REQUIRED|||-NONE-|||0\n"
                       "A 2 3|||Prep|||y|||REQUIRED|||-NONE-|||0\n"
                       "A 3 4|||Wci|||z|||REQUIRED|||-NONE-|||0\n");
  CliRun r = run({"stats", gold});
  CHECK(r.code == 0);
  CHECK(r.out.find("ArtOrDet") != std::string::npos);
  CHECK(r.out.find("50.0") != std::string::npos);
  CHECK(r.out.find("5 types") != std::string::npos);
  CHECK(r.out.find("75.0") != std::string::npos);
  CHECK(r.out.find("all types") != std::string::npos);
  CHECK(r.out.find("100.0") != std::string::npos);

  CliRun tsv = run({"stats", gold, "--format", "tsv"});
  CHECK(tsv.out.find("ArtOrDet\t2\t50.0") != std::string::npos);
}

TEST_CASE("convert emits the token-level edit file") {
  TempDir dir;
  auto sgml = dir.file("gold.sgml",
                       "<MISTAKE start_par=\"0\" start_off=\"5\" end_par=\"0\" end_off=\"9\">\n"
                       "<TYPE>ArtOrDet</TYPE>\n"
                       "<CORRECTION>the past</CORRECTION>\n"
                       "</MISTAKE>\n");
  auto raw = dir.file("essay.txt",
                      "From past to the present, many important innovations have surfaced.\n");
  CliRun r = run({"convert", sgml, raw});
  CHECK(r.code == 0);
  CHECK(r.out.find("A 1 2|||ArtOrDet|||the past|||REQUIRED|||-NONE-|||0\n") != std::string::npos);
  CHECK(r.out.find("S From past to the present,") != std::string::npos);

  SUBCASE("empty inputs give empty output") {
    CliRun empty = run({"convert", dir.file("e.sgml", ""), dir.file("e.txt", "")});
    CHECK(empty.code == 0);
    CHECK(empty.out.empty());
  }
  SUBCASE("offending records are named on failure") {
    auto bad = dir.file("bad.sgml",
                        "<MISTAKE start_par=\"0\" start_off=\"5\" end_par=\"1\" end_off=\"9\">\n"
                        "<TYPE>Nn</TYPE><CORRECTION>x</CORRECTION></MISTAKE>");
    CliRun fail = run({"convert", bad, raw});
    CHECK(fail.code == 2);
    CHECK(fail.err.find("MISTAKE") != std::string::npos);
  }
}

TEST_CASE("convert --remap rewrites legacy types using the tags file") {
  TempDir dir;
  auto sgml = dir.file("gold.sgml",
                       "<MISTAKE start_par=\"0\" start_off=\"10\" end_par=\"0\" end_off=\"12\">\n"
                       "<TYPE>Wcip</TYPE>\n"
                       "<CORRECTION>for</CORRECTION>\n"
                       "</MISTAKE>\n");
  auto raw = dir.file("essay.txt", "dangerous if in a purpose\n");
  auto tags = dir.file("essay.m2t", "S dangerous if in a purpose\nT JJ IN IN DT NN\n");
  CliRun r = run({"convert", sgml, raw, "--remap", "--tags", tags});
  CHECK(r.code == 0);
  CHECK(r.out.find("|||Prep|||for|||") != std::string::npos);
  CHECK(r.out.find("T JJ IN IN DT NN\n") != std::string::npos);

  SUBCASE("--remap without --tags fails") {
    CliRun fail = run({"convert", sgml, raw, "--remap"});
    CHECK(fail.code == 2);
  }
}

TEST_CASE("usage errors exit with code 2, help with 0") {
  CliRun nothing = run({});
  CHECK(nothing.code == 2);
  CliRun unknown = run({"frobnicate"});
  CHECK(unknown.code == 2);
  CliRun help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("score") != std::string::npos);
  CliRun bad_flag = run({"score", "a", "b", "--max-unchanged-words", "99"});
  CHECK(bad_flag.code == 2);
}
