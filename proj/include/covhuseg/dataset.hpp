#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace covhuseg {

/// Mouse-model groups, in the order manifests are sorted.
enum class Group { normal, n56Nx, DN, NEP25 };

/// Accepts the canonical names case-insensitively ("normal", "56Nx", "DN", "NEP25").
Group parse_group(std::string_view text);
std::string_view to_string(Group g);

struct ManifestEntry {
  std::string subject_id;
  Group group = Group::normal;
  std::string patch_path;
  std::string mask_path;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// Sorted by (group, subject, patch); (subject_id, patch_path) unique.
using Manifest = std::vector<ManifestEntry>;

void sort_manifest(Manifest& manifest);

/// Throws std::invalid_argument on duplicate (subject_id, patch_path) pairs.
void validate_manifest(const Manifest& manifest);

/**
 * @brief Where images and masks live under a dataset root.
 *
 * Patterns are '/'-separated relative paths with the placeholders {group},
 * {subject}, {stem} and {ext}. Each of {group}, {subject} and {stem} must
 * occur exactly once per pattern; an image and a mask pair up when their
 * (group, subject, stem) captures agree. {ext} is matched independently in
 * each pattern and may be omitted.
 */
struct Layout {
  std::string image_pattern = "{group}/{subject}/img/{stem}_img.{ext}";
  std::string mask_pattern = "{group}/{subject}/mask/{stem}_mask.{ext}";
};

struct ScanWarning {
  std::string path;
  std::string reason;
};

struct ScanResult {
  Manifest manifest;
  std::vector<ScanWarning> warnings;
};

/// Walks `root` recursively. Paths in the manifest are relative to `root`.
/// Images without a mask (and masks without an image) become warnings.
/// Throws std::runtime_error if root is unreadable or a key matches two
/// images or two masks.
ScanResult scan_manifest(const std::filesystem::path& root, const Layout& layout = {});

enum class Split { A, B, C, D };

Split parse_split(std::string_view text);
std::string_view to_string(Split s);

/// num/den fraction of something to keep.
struct Fraction {
  int num = 1;
  int den = 1;
  /// ceil(n * num / den), computed exactly.
  std::size_t of(std::size_t n) const;
};

struct SplitFractions {
  Fraction subjects;
  Fraction patches;
};

/// A: 1/2 subjects, all patches. B: all subjects, 1/2 patches.
/// C: 1/2 and 1/2. D: all subjects, 1/4 patches.
SplitFractions fractions(Split s);

struct SplitSpec {
  Split split = Split::A;
  std::uint64_t seed = 0;
};

/// Stratified sampling: per group keep ceil(f_s * subjects) subjects, then per
/// kept subject ceil(f_p * patches) patches, all uniformly without
/// replacement from one Rng stream walked in sorted order. Output is sorted.
Manifest make_split(const Manifest& manifest, const SplitSpec& spec);

/// Same sampling with arbitrary fractions.
Manifest make_split(const Manifest& manifest, SplitFractions f, std::uint64_t seed);

/// CSV with header subject_id,group,patch_path,mask_path; LF endings; RFC 4180 quoting.
void write_manifest_csv(const Manifest& manifest, std::ostream& out);
void write_manifest_csv(const Manifest& manifest, const std::filesystem::path& path);
Manifest read_manifest_csv(std::istream& in);
Manifest read_manifest_csv(const std::filesystem::path& path);

}  // namespace covhuseg
