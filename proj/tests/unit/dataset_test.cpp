#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "covhuseg/dataset.hpp"
#include "fixtures.hpp"
#include "tempdir.hpp"

using namespace covhuseg;
using covhuseg::testkit::TempDir;

TEST(Group, ParseAndOrder) {
  EXPECT_EQ(parse_group("56nx"), Group::n56Nx);
  EXPECT_EQ(parse_group("NEP25"), Group::NEP25);
  EXPECT_EQ(to_string(Group::n56Nx), "56Nx");
  EXPECT_THROW(parse_group("mutant"), std::invalid_argument);
  EXPECT_LT(Group::normal, Group::NEP25);
}

TEST(Scan, EmptyDirectory) {
  TempDir dir;
  const auto r = scan_manifest(dir.path());
  EXPECT_TRUE(r.manifest.empty());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Scan, MissingRootThrows) {
  TempDir dir;
  EXPECT_THROW(scan_manifest(dir / "absent"), std::runtime_error);
}

TEST(Scan, TwoSubjectsThreePatches) {
  TempDir dir;
  testkit::write_dataset(dir.path(), {"DN"}, 2, 3);
  const auto r = scan_manifest(dir.path());
  ASSERT_EQ(r.manifest.size(), 6u);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.manifest[0].subject_id, "DN_s0");
  EXPECT_EQ(r.manifest[0].group, Group::DN);
  EXPECT_EQ(r.manifest[0].patch_path, "DN/DN_s0/img/p0_img.pgm");
  EXPECT_EQ(r.manifest[0].mask_path, "DN/DN_s0/mask/p0_mask.pgm");
  EXPECT_EQ(r.manifest[5].subject_id, "DN_s1");
}

TEST(Scan, SortedByGroupEnumOrder) {
  TempDir dir;
  testkit::write_dataset(dir.path(), {"NEP25", "normal", "DN", "56Nx"}, 1, 1);
  const auto r = scan_manifest(dir.path());
  ASSERT_EQ(r.manifest.size(), 4u);
  EXPECT_EQ(r.manifest[0].group, Group::normal);
  EXPECT_EQ(r.manifest[1].group, Group::n56Nx);
  EXPECT_EQ(r.manifest[2].group, Group::DN);
  EXPECT_EQ(r.manifest[3].group, Group::NEP25);
}

TEST(Scan, OrphanImageIsWarning) {
  TempDir dir;
  testkit::write_dataset(dir.path(), {"DN"}, 2, 3);
  std::filesystem::remove(dir / "DN/DN_s1/mask/p2_mask.pgm");
  const auto r = scan_manifest(dir.path());
  EXPECT_EQ(r.manifest.size(), 5u);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.warnings[0].path, "DN/DN_s1/img/p2_img.pgm");
}

TEST(Scan, AmbiguousPairingThrows) {
  TempDir dir;
  testkit::write_dataset(dir.path(), {"DN"}, 1, 1);
  testkit::write_bytes(dir / "DN/DN_s0/img/p0_img.png", "x");
  EXPECT_THROW(scan_manifest(dir.path()), std::runtime_error);
}

TEST(Scan, CustomLayout) {
  TempDir dir;
  testkit::write_bytes(dir / "x/DN-7-a.png", "i");
  testkit::write_bytes(dir / "y/DN-7-a.png", "m");
  Layout l{"x/{group}-{subject}-{stem}.{ext}", "y/{group}-{subject}-{stem}.{ext}"};
  const auto r = scan_manifest(dir.path(), l);
  ASSERT_EQ(r.manifest.size(), 1u);
  EXPECT_EQ(r.manifest[0].subject_id, "7");
  Layout bad{"{group}/{stem}.png", "{group}/{subject}/{stem}.png"};
  EXPECT_THROW(scan_manifest(dir.path(), bad), std::invalid_argument);
}

TEST(Fraction, CeilExact) {
  EXPECT_EQ((Fraction{1, 2}.of(5)), 3u);
  EXPECT_EQ((Fraction{1, 4}.of(10)), 3u);
  EXPECT_EQ((Fraction{1, 1}.of(7)), 7u);
  EXPECT_EQ((Fraction{1, 2}.of(0)), 0u);
}

TEST(Split, Counts) {
  const auto m = testkit::synthetic_manifest(4, 10);
  const std::map<Split, std::size_t> expected{{Split::A, 80}, {Split::B, 80}, {Split::C, 40}, {Split::D, 48}};
  for (auto [s, n] : expected) {
    const auto out = make_split(m, {s, 7});
    EXPECT_EQ(out.size(), n) << to_string(s);
    std::map<Group, std::set<std::string>> subjects;
    std::map<std::string, int> per_subject;
    for (const auto& e : out) {
      subjects[e.group].insert(e.subject_id);
      ++per_subject[e.subject_id];
    }
    const auto f = fractions(s);
    for (const auto& [g, subs] : subjects) EXPECT_EQ(subs.size(), f.subjects.of(4));
    for (const auto& [sub, k] : per_subject) EXPECT_EQ(static_cast<std::size_t>(k), f.patches.of(10));
  }
}

TEST(Split, IdentityDeterminismAndSubset) {
  const auto m = testkit::synthetic_manifest(3, 5);
  EXPECT_EQ(make_split(m, SplitFractions{{1, 1}, {1, 1}}, 3), m);
  const auto a = make_split(m, {Split::C, 11});
  EXPECT_EQ(make_split(m, {Split::C, 11}), a);
  auto sorted = a;
  sort_manifest(sorted);
  EXPECT_EQ(sorted, a);
  for (const auto& e : a) EXPECT_NE(std::find(m.begin(), m.end(), e), m.end());
  bool differs = false;
  for (std::uint64_t seed = 12; seed < 30 && !differs; ++seed) {
    const auto b = make_split(m, {Split::C, seed});
    EXPECT_EQ(b.size(), a.size());
    differs = b != a;
  }
  EXPECT_TRUE(differs);
}

TEST(Split, EmptyManifestThrows) {
  EXPECT_THROW(make_split({}, {Split::A, 0}), std::invalid_argument);
  EXPECT_THROW(parse_split("E"), std::invalid_argument);
}

TEST(ManifestCsv, RoundTripWithQuoting) {
  Manifest m{{"s,1", Group::DN, "a \"b\".png", "m.png"}, {"s2", Group::NEP25, "c.png", "d.png"}};
  std::stringstream ss;
  write_manifest_csv(m, ss);
  EXPECT_EQ(ss.str(),
            "subject_id,group,patch_path,mask_path\n"
            "\"s,1\",DN,\"a \"\"b\"\".png\",m.png\n"
            "s2,NEP25,c.png,d.png\n");
  EXPECT_EQ(read_manifest_csv(ss), m);
}

TEST(ManifestCsv, RejectsBadInput) {
  std::stringstream header("a,b,c,d\n");
  EXPECT_THROW(read_manifest_csv(header), std::runtime_error);
  std::stringstream dup("subject_id,group,patch_path,mask_path\ns,DN,p,m\ns,DN,p,m2\n");
  EXPECT_THROW(read_manifest_csv(dup), std::invalid_argument);
}
