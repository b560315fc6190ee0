#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = C2CREC_SCRATCH;

struct Run {
  int status;
  std::string out;
};

// Runs the CLI with stdout captured to a file; stderr is discarded.
Run c2crec(const std::string& args) {
  fs::create_directories(kScratch);
  const fs::path capture = kScratch / (std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + ".out");
  const std::string cmd = std::string("\"") + C2CREC_BINARY + "\" " + args + " > \"" + capture.string() +
                          "\" 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(capture);
  std::stringstream buf;
  buf << in.rdbuf();
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, buf.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path write_file(const std::string& name, const std::string& body) {
  fs::create_directories(kScratch);
  const fs::path p = kScratch / name;
  std::ofstream(p) << body;
  return p;
}

const std::string kHeader =
    "txn_id,buyer_id,seller_id,item_id,category,price,quantity,rating_overall,rating_quality,rating_delivery,"
    "rating_support\n";

// Fig. 2 style walkthrough: u buys from a; v buys from a, d and e.
const std::string kWalkthrough = kHeader +
                                 "t1,u,a,ia,c1,10,1,5,5,5,5\n"
                                 "t2,v,a,ia,c1,10,1,4,4,4,4\n"
                                 "t3,v,d,id,c1,12,1,5,4,5,4\n"
                                 "t4,v,e,ie,c2,8,2,3,3,3,3\n"
                                 "t5,w,d,id,c1,12,1,4,4,4,4\n";

}  // namespace

TEST(Cli, IngestReportsRejectedRows) {
  auto csv = write_file("bad_rows.csv", kWalkthrough +
                                            "t6,x,x,i,c1,1,1,3,3,3,3\n"
                                            "t7,y,s,i,c1,1,1,9,3,3,3\n"
                                            "t8,y,s,i,c1,nope,1,3,3,3,3\n");
  auto r = c2crec("ingest --input \"" + csv.string() + "\" --output \"" + (kScratch / "bad_rows.json").string() + "\"");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("5 transactions accepted, 3 rows rejected"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(kScratch / "bad_rows.json"));
}

TEST(Cli, IngestErrorsMapToExitCodes) {
  auto headerless = write_file("headerless.csv", "t1,u,a,ia,c1,10,1,5,5,5,5\n");
  EXPECT_EQ(c2crec("ingest --input \"" + headerless.string() + "\" --output /dev/null").status, 2);
  EXPECT_EQ(c2crec("ingest --input /nonexistent/file.csv --output /dev/null").status, 1);
}

TEST(Cli, RecommendWalkthroughAndUnknownUser) {
  auto csv = write_file("walk.csv", kWalkthrough);
  auto cache = kScratch / "walk.json";
  ASSERT_EQ(c2crec("ingest --input \"" + csv.string() + "\" --output \"" + cache.string() + "\"").status, 0);

  auto r = c2crec("recommend --graph \"" + cache.string() + "\" --user u --n 1");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"cold_start\": false"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"seller\": \"d\""), std::string::npos);
  EXPECT_NE(r.out.find("\"seller\": \"e\""), std::string::npos);
  EXPECT_NE(r.out.find("\"item\": \"id\""), std::string::npos);

  EXPECT_EQ(c2crec("recommend --graph \"" + cache.string() + "\" --user nobody").status, 3);
}

TEST(Cli, RecommendFallsBackToColdStart) {
  auto csv = write_file("cold.csv", kWalkthrough);
  // Sellers never buy, so "a" has no similar users and no candidates.
  auto r = c2crec("recommend --graph \"" + csv.string() + "\" --user a");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"cold_start\": true"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"sales\""), std::string::npos);
}

TEST(Cli, RecommendIsDeterministicAndUsesSimilarityCache) {
  auto csv = write_file("det.csv", kWalkthrough);
  auto sim = kScratch / "det.sim";
  fs::remove(sim);
  auto first = c2crec("recommend --graph \"" + csv.string() + "\" --user u --alpha 1 --beta 0 --gamma 0 "
                      "--similarity-cache \"" + sim.string() + "\"");
  ASSERT_EQ(first.status, 0);
  ASSERT_TRUE(fs::exists(sim));
  auto second = c2crec("recommend --graph \"" + csv.string() + "\" --user u --alpha 1 --beta 0 --gamma 0 "
                       "--similarity-cache \"" + sim.string() + "\"");
  EXPECT_EQ(first.out, second.out);
}

TEST(Cli, EvaluateRejectsBadCoefficients) {
  auto csv = write_file("coef.csv", kWalkthrough);
  auto r = c2crec("evaluate --input \"" + csv.string() + "\" --output \"" + (kScratch / "never.json").string() +
                  "\" --alpha 0.5 --beta 0.5 --gamma 0.1");
  EXPECT_EQ(r.status, 4);
  EXPECT_FALSE(fs::exists(kScratch / "never.json"));
  EXPECT_EQ(c2crec("evaluate --input x.csv --output y.json --k 1").status, 4);
  EXPECT_EQ(c2crec("evaluate --input x.csv --output y.json --method popular").status, 4);
  EXPECT_EQ(c2crec("evaluate --bogus-flag").status, 4);
}

TEST(Cli, SynthIsExactAndDeterministic) {
  auto a = kScratch / "synth_a.csv", b = kScratch / "synth_b.csv";
  ASSERT_EQ(c2crec("synth --output \"" + a.string() + "\" --transactions 2066 --seed 5").status, 0);
  ASSERT_EQ(c2crec("synth --output \"" + b.string() + "\" --transactions 2066 --seed 5").status, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  std::ifstream in(a);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 2067u);  // header plus data rows

  auto r = c2crec("ingest --input \"" + a.string() + "\" --output \"" + (kScratch / "synth_a.json").string() + "\"");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("2066 transactions accepted, 0 rows rejected"), std::string::npos) << r.out;
  EXPECT_EQ(c2crec("synth --output /dev/null --affinity 2").status, 4);
}

TEST(Cli, EvaluateWritesIdenticalReportsWithConfigFile) {
  auto data = kScratch / "eval.csv";
  ASSERT_EQ(c2crec("synth --output \"" + data.string() + "\" --buyers 200 --sellers 50 --communities 10 "
                   "--transactions 500 --seed 3").status,
            0);
  auto config = write_file("run.ini", "k = 4\nsamples = 15\nlist-sizes = 1-10\nseed = 9\nalpha = 0.2\nbeta = 0.3\n"
                                      "gamma = 0.5\n");
  auto one = kScratch / "report1.json", two = kScratch / "report2.json", csv = kScratch / "report.csv";
  ASSERT_EQ(c2crec("evaluate --config \"" + config.string() + "\" --input \"" + data.string() + "\" --output \"" +
                   one.string() + "\" --csv \"" + csv.string() + "\" --threads 1")
                .status,
            0);
  ASSERT_EQ(c2crec("evaluate --config \"" + config.string() + "\" --input \"" + data.string() + "\" --output \"" +
                   two.string() + "\" --threads 3")
                .status,
            0);
  const auto report = slurp(one);
  EXPECT_EQ(report, slurp(two));
  EXPECT_NE(report.find("\"k\": 4"), std::string::npos);
  EXPECT_NE(report.find("\"alpha\": 0.2"), std::string::npos);
  EXPECT_NE(report.find("reference_item_maxima"), std::string::npos);
  EXPECT_EQ(slurp(csv).rfind("series,fold,size,precision,recall,f\n", 0), 0u);

  // Flags override the file.
  auto three = kScratch / "report3.json";
  ASSERT_EQ(c2crec("evaluate --config \"" + config.string() + "\" --input \"" + data.string() + "\" --output \"" +
                   three.string() + "\" --k 3")
                .status,
            0);
  EXPECT_NE(slurp(three).find("\"k\": 3"), std::string::npos);
}

TEST(Cli, MineRulesAndStats) {
  auto csv = write_file("rules.csv", kHeader +
                                         "t1,u1,s,a,c,1,1,3,3,3,3\nt2,u1,s,b,c,1,1,3,3,3,3\n"
                                         "t3,u2,s,a,c,1,1,3,3,3,3\nt4,u2,s,b,c,1,1,3,3,3,3\n"
                                         "t5,u3,s,a,c,1,1,3,3,3,3\nt6,u3,s,c,c,1,1,3,3,3,3\n");
  auto r = c2crec("mine-rules --graph \"" + csv.string() + "\" --min-support 0.6 --min-confidence 0.9");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "{\"antecedent\":[\"b\"],\"consequent\":\"a\",\"support\":0.6666666666666666,\"confidence\":1.0}\n");

  auto s = c2crec("stats --graph \"" + csv.string() + "\"");
  ASSERT_EQ(s.status, 0);
  EXPECT_NE(s.out.find("\"transactions\": 6"), std::string::npos) << s.out;
}
