#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "trimani/surgery.hpp"

using namespace trimani;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TRIMANI_TEST_DATA) + "/" + name; }

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("trimani_cli_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const Complex& k) const {
    write_facet_file(file(name), k);
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream s(text);
  for (std::string l; std::getline(s, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, Validate) {
  TempDir tmp;
  EXPECT_EQ(run({"validate", tmp.write("s.tri", boundary_of_4simplex())}).code, 0);
  const auto bad = run({"validate", data("pinched.tri")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(bad.err.empty());
  EXPECT_EQ(run({"validate", tmp.file("absent.tri")}).code, 1);
}

TEST(Cli, Stats) {
  TempDir tmp;
  const auto s = run({"stats", tmp.write("s.tri", boundary_of_4simplex())});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(lines(s.out).at(0), "f=(5,10,10,5) g=(1,0,0)");
  EXPECT_NE(s.out.find("neighborly=yes"), std::string::npos);

  const auto rp3 = run({"stats", data("rp3_11_51.tri")});
  EXPECT_NE(rp3.out.find("g=(1,6,17)"), std::string::npos);
  EXPECT_NE(rp3.out.find("mu=1.5\n"), std::string::npos);

  const auto w = run({"stats", data("walkup9.tri")});
  EXPECT_NE(w.out.find("f=(9,36,54,27)"), std::string::npos);
  EXPECT_NE(w.out.find("mu=-4.5 not g2-irreducible"), std::string::npos);
  EXPECT_NE(w.out.find("g2_floor=10"), std::string::npos);
}

TEST(Cli, StatsParseErrorHasLineNumber) {
  TempDir tmp;
  {
    std::ofstream f(tmp.file("bad.tri"));
    f << "d=3 n=5\n1 2 3 4\n1 2 x 5\n";
  }
  const auto r = run({"stats", tmp.file("bad.tri")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
  EXPECT_NE(r.err.find('3'), std::string::npos);
}

TEST(Cli, Homology) {
  const auto r = run({"homology", data("rp3_11_51.tri")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Z, Z_2, 0, Z\n");
}

TEST(Cli, Flip) {
  TempDir tmp;
  const auto s = tmp.write("s.tri", boundary_of_4simplex());
  const auto bad = run({"flip", "--kind", "1", "--face", "1,2,3", s});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("IllegalMove"), std::string::npos);

  const auto sub = run({"flip", "--kind", "0", "--face", "1,2,3,4", s, "-o", tmp.file("sub.tri")});
  EXPECT_EQ(sub.code, 0);
  const Complex k = read_facet_file(tmp.file("sub.tri"));
  EXPECT_EQ(k.f_vector(), (FVector3{6, 14, 16, 8}));
  // Undo with the 3-move on the new vertex.
  const auto back = run({"flip", "--kind", "3", "--face", "6", tmp.file("sub.tri")});
  EXPECT_EQ(back.code, 0);
  EXPECT_EQ(parse_facet_text(back.out), boundary_of_4simplex());

  EXPECT_EQ(run({"flip", "--kind", "7", "--face", "1", s}).code, 2);
  EXPECT_EQ(run({"flip", s}).code, 2);
}

TEST(Cli, RandomFlipsAreSeeded) {
  TempDir tmp;
  const auto s = tmp.write("s.tri", boundary_of_4simplex());
  const auto a = run({"flip", "--random", "50", "--weights", "1,1,1,1", "--seed", "7", s});
  const auto b = run({"flip", "--random", "50", "--weights", "1,1,1,1", "--seed", "7", s});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(validate(parse_facet_text(a.out)).is_manifold());
  EXPECT_EQ(run({"flip", "--random", "5", "--weights", "0,0,0,0", s}).code, 1);
}

TEST(Cli, CanonRoundTrip) {
  const auto r = run({"canon", data("walkup9.tri")});
  EXPECT_EQ(r.code, 0);
  const auto first = lines(r.out).at(0);
  ASSERT_EQ(first.rfind("# digest=", 0), 0u);
  const Complex k = parse_facet_text(r.out);
  EXPECT_EQ(canonicalize(k).digest, first.substr(9));
  EXPECT_EQ(canonicalize(fixtures::load("walkup9.tri")).digest, first.substr(9));
}

TEST(Cli, Enumerate) {
  const auto r = run({"enumerate", "--f0", "11", "--f1", "51:54"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], "digest\tf0\tf1\tg2\thomology\tmissing_facets");
  EXPECT_LT(ls[1], ls[2]);
  for (int i = 1; i <= 2; ++i) EXPECT_NE(ls[i].find("\tZ, Z_2, 0, Z\t0"), std::string::npos);
  EXPECT_NE(r.err.find("records=2"), std::string::npos);

  const auto jobs = run({"enumerate", "--f0", "11", "--f1", "51:54", "--jobs", "3"});
  EXPECT_EQ(jobs.out, r.out);
}

TEST(Cli, EnumerateWritesRecords) {
  TempDir tmp;
  const auto r = run({"enumerate", "--f0", "11", "--g2-cap", "17", "--out", tmp.file("census")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  const auto digest = ls[1].substr(0, ls[1].find('\t'));
  const Complex k = read_facet_file(tmp.file("census/" + digest + ".tri"));
  EXPECT_EQ(canonicalize(k).digest, digest);
  EXPECT_EQ(k.f_vector()[1], 51);
}

TEST(Cli, EnumerateErrors) {
  EXPECT_EQ(run({"enumerate", "--f1", "51:54"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--f0", "11"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--f0", "11", "--f1", "x"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--f0", "11", "--f1", "51:54", "--rules", "L99"}).code, 1);
  EXPECT_EQ(run({"enumerate", "--f0", "11", "--f1", "60:54"}).code, 1);
  EXPECT_EQ(run({"enumerate", "--f0", "40", "--f1", "51:54"}).code, 1);
}

TEST(Cli, Surgery) {
  TempDir tmp;
  const auto rp3 = data("rp3_11_51.tri");
  const Complex k = read_facet_file(rp3);
  const Facet a = k.facets()[0], b = k.facets()[1];
  std::string spec;
  for (int i = 0; i < 4; ++i) spec += (i ? "," : "") + std::to_string(a[i]) + ":" + std::to_string(b[i]);
  const auto r = run({"surgery", "sum", rp3, rp3, "--match", spec, "-o", tmp.file("sum.tri")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Complex s = read_facet_file(tmp.file("sum.tri"));
  EXPECT_EQ(s.f_vector(), (FVector3{18, 96, 156, 78}));
  EXPECT_EQ(s, connected_sum(k, k, FacetMatching::identity(a, b)));

  const auto missing = run({"surgery", "missing", tmp.file("sum.tri")});
  EXPECT_EQ(missing.code, 0);
  EXPECT_FALSE(missing.out.empty());
  const auto sigma = lines(missing.out).at(0);
  const auto split = run({"surgery", "split", tmp.file("sum.tri"), "--facet", sigma});
  EXPECT_EQ(split.code, 0);
  EXPECT_EQ(lines(split.out).at(0), "separating");

  EXPECT_EQ(run({"surgery", "missing", rp3}).out, "");
  EXPECT_EQ(run({"surgery", "sum", rp3, rp3, "--match", "1:2,3"}).code, 1);
  EXPECT_EQ(run({"surgery", "sum", rp3, rp3}).code, 2);
  EXPECT_EQ(run({"surgery", "subdivide", rp3, "--facet", "1,2,3,99"}).code, 1);
}

TEST(Cli, Bounds) {
  const auto r = run({"bounds", "--kmax", "30"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 32u);
  EXPECT_EQ(ls[1], "0\t5\t0");
  EXPECT_EQ(ls[2], "1\t9\t10");
  EXPECT_EQ(ls[13], "12\t20\t120");
  EXPECT_EQ(ls[31], "30\t29\t300");
  const auto d4 = run({"bounds", "--d", "4", "--kmax", "3"});
  EXPECT_EQ(lines(d4.out).at(4), "3\t15\t45");
  const auto pairs = run({"bounds", "--pairs", "20"});
  EXPECT_EQ(lines(pairs.out).size(), 21u);
  EXPECT_EQ(lines(pairs.out).at(1), "11\t51\t17");
}

TEST(Cli, GammaCertifyAndJournal) {
  TempDir tmp;
  const auto s = tmp.write("s.tri", boundary_of_4simplex());
  const auto c = run({"gamma", "certify", s});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("gamma_star_upper=0\n"), std::string::npos);
  const auto w = run({"gamma", "certify", data("walkup9.tri")});
  EXPECT_NE(w.out.find("gamma_star_upper=10\n"), std::string::npos);
  const auto none = run({"gamma", "certify", data("rp3_11_51.tri")});
  EXPECT_NE(none.out.find("gamma_star_upper=none"), std::string::npos);
  const auto searched =
      run({"gamma", "certify", data("rp3_11_51.tri"), "--search", "2000", "--path-out", tmp.file("path.txt")});
  EXPECT_NE(searched.out.find("gamma_star_upper=17"), std::string::npos);
  const auto replay = run({"gamma", "certify", data("rp3_11_51.tri"), "--path", tmp.file("path.txt")});
  EXPECT_NE(replay.out.find("gamma_star_upper=17"), std::string::npos);

  const auto journal = tmp.file("journal.txt");
  EXPECT_EQ(run({"gamma", "record", data("rp3_11_51.tri"), "--journal", journal, "--name", "RP3"}).code, 0);
  const auto q = run({"gamma", "query", "--journal", journal, "--key", "Z,Z_2,0,Z"});
  EXPECT_EQ(q.code, 0);
  EXPECT_NE(q.out.find("gamma_upper=17"), std::string::npos);
  EXPECT_EQ(run({"gamma", "query", "--journal", journal, "--key", "Z,0,0,Z"}).out, "absent\n");
  EXPECT_EQ(lines(run({"gamma", "list", "--journal", journal}).out).size(), 2u);
}

TEST(Cli, AnnealIsDeterministic) {
  TempDir tmp;
  const auto start = tmp.write("b.tri", barycentric_subdivide(boundary_of_4simplex()));
  const std::vector<std::string> args = {"anneal", start, "--seeds", "2", "--rounds", "2", "--mix-moves", "500",
                                         "--cool-moves", "5000", "--out", tmp.file("best")};
  const auto a = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  auto with_jobs = args;
  with_jobs.insert(with_jobs.end(), {"--jobs", "2"});
  EXPECT_EQ(run(with_jobs).out, a.out);
  const auto ls = lines(a.out);
  EXPECT_EQ(std::count_if(ls.begin(), ls.end(), [](const std::string& l) { return l.rfind("best\t", 0) == 0; }),
            2);
  EXPECT_NE(a.out.find("best\t0\t\t\t5\t10\t"), std::string::npos);
  EXPECT_FALSE(std::filesystem::is_empty(tmp.file("best")));
}

TEST(Cli, Usage) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"stats"}).code, 2);
}
