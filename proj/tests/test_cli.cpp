#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "spheresep/cli.hpp"
#include "spheresep/harness.hpp"
#include "spheresep/io.hpp"

namespace spheresep::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kGolden = SPHERESEP_GOLDEN_DIR;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("spheresep_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int expected_exit(const io::Json& result) {
  const std::string status = result.at("status");
  if (status == "disjoint") return kDisjoint;
  if (status == "intersecting") return kIntersecting;
  return kAmbiguous;
}

std::vector<fs::path> golden_instances() {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(kGolden / "instances")) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

UnitPoint point_from(const io::Json& arr) {
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  return UnitPoint(v, 1e-12);
}

TEST(Golden, TenStoredInstancesAreByteIdentical) {
  const auto instances = golden_instances();
  ASSERT_EQ(instances.size(), 10u);
  for (const auto& inst : instances) {
    const std::string name = inst.stem().string();
    const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
        {"check", {"check", inst.string()}},
        {"lp", {"witness", "--method", "lp", inst.string()}},
        {"proof", {"witness", "--method", "proof-path", inst.string()}},
    };
    for (const auto& [suffix, args] : commands) {
      const fs::path expected_path = kGolden / "expected" / (name + "." + suffix + ".json");
      ASSERT_TRUE(fs::exists(expected_path)) << expected_path;
      const std::string expected = slurp(expected_path);
      const Invocation first = invoke(args);
      const Invocation second = invoke(args);
      EXPECT_EQ(first.out, expected) << name << " " << suffix;
      EXPECT_EQ(second.out, first.out) << name << " " << suffix;
      EXPECT_EQ(first.code, expected_exit(io::Json::parse(expected))) << name << " " << suffix;
    }
  }
}

TEST(Golden, EmittedWitnessesRoundTrip) {
  int disjoint = 0;
  for (const auto& inst : golden_instances()) {
    const io::Instance parsed = io::load_instance(inst);
    for (const char* method : {"lp", "proof-path"}) {
      const Invocation r = invoke({"witness", "--method", method, inst.string()});
      const io::Json doc = io::Json::parse(r.out);
      if (doc.at("status") != "disjoint") continue;
      ++disjoint;
      const UnitPoint p = point_from(doc.at("witness"));
      EXPECT_TRUE(wedge_membership(parsed.body1(), parsed.body2(), p, parsed.tolerances).member)
          << inst << " " << method;
    }
  }
  EXPECT_EQ(disjoint, 14);
}

TEST(Check, AntipodalSingletonsOnCircle) {
  const Invocation r = invoke({"check", (kGolden / "instances" / "s1_antipodal.json").string()});
  EXPECT_EQ(r.code, kDisjoint);
  EXPECT_EQ(io::Json::parse(r.out).at("status"), "disjoint");
}

TEST(Check, IdenticalSingletons) {
  const Invocation r = invoke({"check", (kGolden / "instances" / "s1_identical.json").string()});
  EXPECT_EQ(r.code, kIntersecting);
  const io::Json doc = io::Json::parse(r.out);
  EXPECT_EQ(doc.at("status"), "intersecting");
  EXPECT_LT((point_from(doc.at("common_point")).coords() - Vector::Unit(2, 1)).norm(), 1e-12);
}

TEST(Witness, AntipodalLpWitnessIsAxis) {
  const Invocation r = invoke({"witness", (kGolden / "instances" / "s1_antipodal.json").string()});
  ASSERT_EQ(r.code, kDisjoint);
  const io::Json doc = io::Json::parse(r.out);
  const UnitPoint p = point_from(doc.at("witness"));
  EXPECT_NEAR(std::abs(p[0]), 1.0, 1e-12);
  EXPECT_NEAR(p[1], 0.0, 1e-12);
  EXPECT_NEAR(doc.at("margin").get<double>(), 1.0, 1e-12);
}

TEST(Witness, ProofPathTraceIsMonotone) {
  for (const auto& inst : golden_instances()) {
    const Invocation r = invoke({"witness", "--method", "proof-path", inst.string()});
    const io::Json doc = io::Json::parse(r.out);
    if (doc.at("status") != "disjoint") continue;
    const io::Json& offsets = doc.at("trace").at("offsets");
    ASSERT_FALSE(offsets.empty());
    for (std::size_t i = 1; i < offsets.size(); ++i) {
      EXPECT_LT(std::abs(offsets[i].get<double>()), std::abs(offsets[i - 1].get<double>())) << inst;
    }
    EXPECT_LT(std::abs(offsets.back().get<double>()), 1e-6) << inst;
    EXPECT_EQ(doc.at("trace").at("iterations").get<std::size_t>() + 1, offsets.size()) << inst;
  }
}

TEST(Witness, BothMethodsOnFiftyGeneratedInstances) {
  TempDir dir;
  for (int i = 0; i < 50; ++i) {
    harness::InstanceSpec spec;
    spec.n = 1 + i % 4;
    spec.k1 = 1 + i % 7;
    spec.k2 = 1 + (i / 7) % 7;
    spec.seed = 1000 + static_cast<std::uint64_t>(i);
    spec.mode = harness::Mode::ForceDisjoint;
    const auto [b1, b2] = harness::generate(spec);
    const fs::path file = dir.write("inst" + std::to_string(i) + ".json",
                                    io::dump(io::instance_to_json(b1, b2)));
    for (const char* method : {"lp", "proof-path"}) {
      const Invocation r = invoke({"witness", "--method", method, file.string()});
      ASSERT_EQ(r.code, kDisjoint) << i << " " << method << ": " << r.err;
      const UnitPoint p = point_from(io::Json::parse(r.out).at("witness"));
      EXPECT_TRUE(wedge_membership(b1, b2, p).member) << i << " " << method;
    }
  }
}

TEST(ExitCodes, MalformedInputs) {
  TempDir dir;
  struct Case {
    const char* text;
    const char* needle;
  };
  const Case cases[] = {
      {"{\"n\": 1, \"w1\": [[1, 0]], \"w2\": [[-1, 0]]", "not a valid document"},
      {"{\"w1\": [[1, 0]], \"w2\": [[-1, 0]]}", "\"n\""},
      {"{\"n\": 1, \"w2\": [[-1, 0]]}", "\"w1\""},
      {"{\"n\": 1, \"w1\": [[1, 0, 0]], \"w2\": [[-1, 0]]}", "w1[0]"},
      {"{\"n\": 1, \"w1\": [[1, 0]], \"w2\": [[-1, \"x\"]]}", "w2[0][1]"},
      {"{\"n\": 1, \"w1\": [[1, 0]], \"w2\": [[1e-7, 0]]}", "w2[0]"},
      {"{\"n\": 1, \"w1\": [[1, 0]], \"w2\": [[-1, 0]], \"extra\": 1}", "extra"},
      {"{\"n\": 1, \"w1\": [[1, 0]], \"w2\": [[-1, 0]], \"tolerances\": {\"lp_tol\": -1}}",
       "tolerances"},
      {"{\"n\": 1, \"w1\": [[1, 0]], \"w2\": [[-1, 0]], \"tolerances\": {\"speed\": 1}}",
       "tolerances.speed"},
  };
  int i = 0;
  for (const auto& c : cases) {
    const fs::path file = dir.write("bad" + std::to_string(i++) + ".json", c.text);
    for (const char* cmd : {"check", "witness"}) {
      const Invocation r = invoke({cmd, file.string()});
      EXPECT_EQ(r.code, kMalformed) << c.text;
      EXPECT_NE(r.err.find(c.needle), std::string::npos) << r.err;
      EXPECT_TRUE(r.out.empty());
    }
  }
  EXPECT_EQ(invoke({"check", (dir.path() / "missing.json").string()}).code, kMalformed);
}

TEST(ExitCodes, BadFlags) {
  const std::string inst = (kGolden / "instances" / "s1_antipodal.json").string();
  EXPECT_EQ(invoke({}).code, kMalformed);
  EXPECT_EQ(invoke({"frobnicate"}).code, kMalformed);
  EXPECT_EQ(invoke({"check"}).code, kMalformed);
  EXPECT_EQ(invoke({"witness", "--method", "magic", inst}).code, kMalformed);
  EXPECT_EQ(invoke({"--tol-margin", "0", "check", inst}).code, kMalformed);
  EXPECT_EQ(invoke({"--tol-offset", "-1", "check", inst}).code, kMalformed);
  EXPECT_EQ(invoke({"fuzz", "--count", "-3"}).code, kMalformed);
  EXPECT_EQ(invoke({"fuzz", "--count", "1", "--dims", "0"}).code, kMalformed);
  EXPECT_EQ(invoke({"fuzz", "--count", "1", "--dims", "2,x"}).code, kMalformed);
  EXPECT_EQ(invoke({"fuzz", "--count", "1", "--sizes", "5..2"}).code, kMalformed);
  EXPECT_EQ(invoke({"plot", inst}).code, kMalformed);
}

TEST(ExitCodes, InvalidInstanceIsAmbiguousClass) {
  // w1 holds antipodal points, so it is not hemispherical.
  TempDir dir;
  const fs::path file =
      dir.write("wide.json", "{\"n\": 2, \"w1\": [[1, 0, 0], [-1, 0, 0]], \"w2\": [[0, 0, 1]]}");
  const Invocation r = invoke({"check", file.string()});
  EXPECT_EQ(r.code, kAmbiguous);
  EXPECT_NE(r.err.find("NotHemispherical"), std::string::npos) << r.err;
}

TEST(ExitCodes, ProofPathFailureIsFive) {
  TempDir dir;
  const fs::path file = dir.write(
      "tight.json",
      "{\"n\": 2, \"w1\": [[1, 0.01, 0.2], [1, 0.01, -0.2]], \"w2\": [[1, -0.01, 0.2], "
      "[1, -0.01, -0.2]], \"tolerances\": {\"max_iter\": 1}}");
  const Invocation r = invoke({"witness", "--method", "proof-path", file.string()});
  EXPECT_EQ(r.code, kProofFailed) << r.err;
  EXPECT_TRUE(r.out.empty());
  // The LP method is unaffected by the round budget.
  EXPECT_EQ(invoke({"witness", "--method", "lp", file.string()}).code, kDisjoint);
}

TEST(Warnings, NormalizationIsReported) {
  const Invocation r = invoke({"check", (kGolden / "instances" / "s2_unnormalized.json").string()});
  EXPECT_EQ(r.code, kDisjoint);
  EXPECT_NE(r.err.find("warning: w1[0] normalized"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("warning: w2[1] normalized"), std::string::npos) << r.err;
  const Invocation clean = invoke({"check", (kGolden / "instances" / "s2_caps.json").string()});
  EXPECT_TRUE(clean.err.empty()) << clean.err;
}

TEST(Fuzz, CountZero) {
  const Invocation r = invoke({"fuzz", "--count", "0"});
  EXPECT_EQ(r.code, kDisjoint);
  const io::Json doc = io::Json::parse(r.out);
  EXPECT_EQ(doc.at("instances"), 0);
  EXPECT_TRUE(doc.at("failures").empty());
}

TEST(Fuzz, DeterministicBytes) {
  const std::vector<std::string> args = {"fuzz", "--count", "60", "--dims", "1..3", "--sizes",
                                         "1,4,8", "--seed", "77"};
  const Invocation a = invoke(args);
  const Invocation b = invoke(args);
  EXPECT_EQ(a.code, kDisjoint) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(io::Json::parse(a.out).at("instances"), 60);
}

TEST(Fuzz, DisagreementExitsOne) {
  // No contraction run can reach an offset below 1e-300.
  const Invocation r = invoke({"--tol-offset", "1e-300", "fuzz", "--count", "12", "--dims", "2"});
  EXPECT_EQ(r.code, kDisagreement);
  EXPECT_GT(io::Json::parse(r.out).at("disagreements").get<int>(), 0);
}

TEST(Plot, SingletonScene) {
  TempDir dir;
  const fs::path inst = dir.write("pair.json", "{\"n\": 2, \"w1\": [[0, 0, 1]], \"w2\": [[0, 1, 0]]}");
  const fs::path scene_path = dir.path() / "scene.json";
  const Invocation r = invoke({"plot", inst.string(), "-o", scene_path.string()});
  ASSERT_EQ(r.code, kDisjoint) << r.err;
  const io::Json scene = io::Json::parse(slurp(scene_path));
  EXPECT_EQ(scene.at("counts").at("generators"), 2);
  EXPECT_EQ(scene.at("counts").at("arcs"), 0);
  EXPECT_EQ(scene.at("boundary").size(), 128u);
  EXPECT_EQ(scene.at("counts").at("points"), 2 + 1 + 128);
  const UnitPoint p = point_from(scene.at("witness"));
  for (const auto& x : scene.at("boundary")) EXPECT_LT(std::abs(p.dot(point_from(x))), 1e-9);
}

TEST(Plot, CountsMatchFormula) {
  TempDir dir;
  for (const auto& inst : golden_instances()) {
    if (io::load_instance(inst).n != 2) continue;
    const fs::path out = dir.path() / (inst.stem().string() + ".scene.json");
    ASSERT_EQ(invoke({"plot", inst.string(), "-o", out.string()}).code, kDisjoint) << inst;
    const io::Json scene = io::Json::parse(slurp(out));
    std::size_t generators = 0, arcs = 0, arc_points = 0;
    for (const auto& body : scene.at("bodies")) {
      generators += body.at("generators").size();
      arcs += body.at("arcs").size();
      for (const auto& arc : body.at("arcs")) {
        EXPECT_EQ(arc.size(), 32u);
        arc_points += arc.size();
      }
    }
    const bool witness = !scene.at("witness").is_null();
    const std::size_t boundary = scene.at("boundary").size();
    EXPECT_EQ(boundary, witness ? 128u : 0u) << inst;
    EXPECT_EQ(scene.at("counts").at("points").get<std::size_t>(),
              generators + 32 * arcs + (witness ? 1 + 128 : 0))
        << inst;
    EXPECT_EQ(arc_points, 32 * arcs);
    if (witness) {
      const UnitPoint p = point_from(scene.at("witness"));
      for (const auto& x : scene.at("boundary")) EXPECT_LT(std::abs(p.dot(point_from(x))), 1e-9);
    }
  }
}

TEST(Plot, RejectsOtherDimensions) {
  TempDir dir;
  const Invocation r = invoke({"plot", (kGolden / "instances" / "s3_caps.json").string(), "-o",
                        (dir.path() / "x.json").string()});
  EXPECT_EQ(r.code, kAmbiguous);
  EXPECT_NE(r.err.find("UnsupportedDimension"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace spheresep::cli
