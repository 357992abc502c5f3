#include "covhuseg/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>
#include <tuple>

#include "covhuseg/rng.hpp"
#include "csv.hpp"

namespace covhuseg {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

Group parse_group(std::string_view text) {
  const std::string l = lower(text);
  if (l == "normal") return Group::normal;
  if (l == "56nx") return Group::n56Nx;
  if (l == "dn") return Group::DN;
  if (l == "nep25") return Group::NEP25;
  throw std::invalid_argument("unknown group '" + std::string(text) +
                              "' (expected normal, 56Nx, DN or NEP25)");
}

std::string_view to_string(Group g) {
  switch (g) {
    case Group::normal:
      return "normal";
    case Group::n56Nx:
      return "56Nx";
    case Group::DN:
      return "DN";
    case Group::NEP25:
      return "NEP25";
  }
  return "?";
}

namespace {

auto sort_key(const ManifestEntry& e) { return std::tie(e.group, e.subject_id, e.patch_path); }

}  // namespace

void sort_manifest(Manifest& manifest) {
  std::sort(manifest.begin(), manifest.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return sort_key(a) < sort_key(b); });
}

void validate_manifest(const Manifest& manifest) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : manifest) {
    if (!seen.emplace(e.subject_id, e.patch_path).second) {
      throw std::invalid_argument("duplicate manifest entry for subject '" + e.subject_id +
                                  "', patch '" + e.patch_path + "'");
    }
  }
}

// --- scanning ----------------------------------------------------------------

namespace {

struct CompiledPattern {
  std::regex regex;
  int group_idx = 0;
  int subject_idx = 0;
  int stem_idx = 0;
};

CompiledPattern compile_pattern(const std::string& pattern) {
  static const std::string kSpecial = R"(\^$.|?*+()[]{})";
  CompiledPattern out;
  std::string rx;
  int capture = 0;
  std::size_t i = 0;
  auto take = [&](std::string_view name, int& slot, const char* expr) {
    if (slot != 0) {
      throw std::invalid_argument("layout pattern '" + pattern + "' repeats {" + std::string(name) + "}");
    }
    slot = ++capture;
    rx += expr;
  };
  while (i < pattern.size()) {
    if (pattern[i] == '{') {
      const std::size_t close = pattern.find('}', i);
      if (close == std::string::npos) {
        throw std::invalid_argument("layout pattern '" + pattern + "' has an unclosed placeholder");
      }
      const std::string name = pattern.substr(i + 1, close - i - 1);
      if (name == "group") {
        take(name, out.group_idx, "([^/]+)");
      } else if (name == "subject") {
        take(name, out.subject_idx, "([^/]+)");
      } else if (name == "stem") {
        take(name, out.stem_idx, "([^/]+?)");
      } else if (name == "ext") {
        ++capture;
        rx += "([^/.]+)";
      } else {
        throw std::invalid_argument("layout pattern '" + pattern + "' has unknown placeholder {" +
                                    name + "}");
      }
      i = close + 1;
    } else {
      if (kSpecial.find(pattern[i]) != std::string::npos) rx += '\\';
      rx += pattern[i++];
    }
  }
  if (out.group_idx == 0 || out.subject_idx == 0 || out.stem_idx == 0) {
    throw std::invalid_argument("layout pattern '" + pattern +
                                "' must contain {group}, {subject} and {stem}");
  }
  out.regex = std::regex(rx);
  return out;
}

using PairKey = std::tuple<Group, std::string, std::string>;

struct Match {
  PairKey key;
  std::string path;
};

}  // namespace

ScanResult scan_manifest(const fs::path& root, const Layout& layout) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw std::runtime_error("cannot read dataset root '" + root.string() + "': not a directory");
  }
  const CompiledPattern image_rx = compile_pattern(layout.image_pattern);
  const CompiledPattern mask_rx = compile_pattern(layout.mask_pattern);

  ScanResult result;
  std::map<PairKey, std::string> images;
  std::map<PairKey, std::string> masks;

  auto classify = [&](const std::string& rel, const CompiledPattern& p,
                      std::map<PairKey, std::string>& into, const char* kind) -> bool {
    std::smatch m;
    if (!std::regex_match(rel, m, p.regex)) return false;
    Group g;
    try {
      g = parse_group(m[p.group_idx].str());
    } catch (const std::invalid_argument& e) {
      result.warnings.push_back({rel, e.what()});
      return true;
    }
    PairKey key{g, m[p.subject_idx].str(), m[p.stem_idx].str()};
    auto [it, inserted] = into.emplace(key, rel);
    if (!inserted) {
      throw std::runtime_error("ambiguous pairing: " + std::string(kind) + "s '" + it->second +
                               "' and '" + rel + "' share group/subject/stem");
    }
    return true;
  };

  fs::recursive_directory_iterator it(root, ec);
  if (ec) throw std::runtime_error("cannot read dataset root '" + root.string() + "': " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw std::runtime_error("error walking '" + root.string() + "': " + ec.message());
    if (!it->is_regular_file(ec)) continue;
    const std::string rel = fs::relative(it->path(), root).generic_string();
    if (!classify(rel, image_rx, images, "image")) classify(rel, mask_rx, masks, "mask");
  }

  for (const auto& [key, image] : images) {
    auto m = masks.find(key);
    if (m == masks.end()) {
      result.warnings.push_back({image, "image has no matching mask"});
      continue;
    }
    result.manifest.push_back({std::get<1>(key), std::get<0>(key), image, m->second});
    masks.erase(m);
  }
  for (const auto& [key, mask] : masks) {
    result.warnings.push_back({mask, "mask has no matching image"});
  }
  sort_manifest(result.manifest);
  std::sort(result.warnings.begin(), result.warnings.end(),
            [](const ScanWarning& a, const ScanWarning& b) { return a.path < b.path; });
  return result;
}

// --- splits ------------------------------------------------------------------

Split parse_split(std::string_view text) {
  if (text == "A" || text == "a") return Split::A;
  if (text == "B" || text == "b") return Split::B;
  if (text == "C" || text == "c") return Split::C;
  if (text == "D" || text == "d") return Split::D;
  throw std::invalid_argument("unknown split '" + std::string(text) + "' (use A, B, C or D)");
}

std::string_view to_string(Split s) {
  constexpr std::string_view names[] = {"A", "B", "C", "D"};
  return names[static_cast<int>(s)];
}

std::size_t Fraction::of(std::size_t n) const {
  const auto num_u = static_cast<std::size_t>(num);
  const auto den_u = static_cast<std::size_t>(den);
  return (n * num_u + den_u - 1) / den_u;
}

SplitFractions fractions(Split s) {
  switch (s) {
    case Split::A:
      return {{1, 2}, {1, 1}};
    case Split::B:
      return {{1, 1}, {1, 2}};
    case Split::C:
      return {{1, 2}, {1, 2}};
    case Split::D:
      return {{1, 1}, {1, 4}};
  }
  throw std::invalid_argument("bad split");
}

namespace {

// Indices of k elements drawn uniformly without replacement, ascending.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

Manifest make_split(const Manifest& manifest, SplitFractions f, std::uint64_t seed) {
  if (manifest.empty()) throw std::invalid_argument("cannot split an empty manifest");
  if (f.subjects.num < 0 || f.subjects.den < 1 || f.subjects.num > f.subjects.den ||
      f.patches.num < 0 || f.patches.den < 1 || f.patches.num > f.patches.den) {
    throw std::invalid_argument("split fractions must lie in [0,1]");
  }
  Manifest sorted = manifest;
  sort_manifest(sorted);

  // group -> subject -> entries, all in sorted order.
  std::map<Group, std::map<std::string, std::vector<const ManifestEntry*>>> tree;
  for (const auto& e : sorted) tree[e.group][e.subject_id].push_back(&e);

  Rng rng(seed);
  Manifest out;
  for (const auto& [group, subjects] : tree) {
    std::vector<const std::vector<const ManifestEntry*>*> subject_list;
    for (const auto& [id, entries] : subjects) subject_list.push_back(&entries);
    for (std::size_t s : sample_indices(subject_list.size(), f.subjects.of(subject_list.size()), rng)) {
      const auto& entries = *subject_list[s];
      for (std::size_t p : sample_indices(entries.size(), f.patches.of(entries.size()), rng)) {
        out.push_back(*entries[p]);
      }
    }
  }
  sort_manifest(out);
  return out;
}

Manifest make_split(const Manifest& manifest, const SplitSpec& spec) {
  return make_split(manifest, fractions(spec.split), spec.seed);
}

// --- CSV ---------------------------------------------------------------------

namespace {
constexpr std::string_view kHeader = "subject_id,group,patch_path,mask_path";
}

void write_manifest_csv(const Manifest& manifest, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& e : manifest) {
    out << detail::csv_field(e.subject_id) << ',' << to_string(e.group) << ','
        << detail::csv_field(e.patch_path) << ',' << detail::csv_field(e.mask_path) << '\n';
  }
}

void write_manifest_csv(const Manifest& manifest, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write manifest '" + path.string() + "'");
  write_manifest_csv(manifest, out);
  if (!out) throw std::runtime_error("write failed for manifest '" + path.string() + "'");
}

Manifest read_manifest_csv(std::istream& in) {
  auto header = detail::read_csv_record(in);
  if (!header) throw std::runtime_error("manifest is empty (missing header)");
  if (*header != std::vector<std::string>{"subject_id", "group", "patch_path", "mask_path"}) {
    throw std::runtime_error("manifest header must be '" + std::string(kHeader) + "'");
  }
  Manifest m;
  std::size_t line = 1;
  while (auto rec = detail::read_csv_record(in)) {
    ++line;
    if (rec->size() == 1 && rec->front().empty()) continue;
    if (rec->size() != 4) {
      throw std::runtime_error("manifest record " + std::to_string(line) + " has " +
                               std::to_string(rec->size()) + " fields, expected 4");
    }
    m.push_back({(*rec)[0], parse_group((*rec)[1]), (*rec)[2], (*rec)[3]});
  }
  validate_manifest(m);
  return m;
}

Manifest read_manifest_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read manifest '" + path.string() + "'");
  return read_manifest_csv(in);
}

}  // namespace covhuseg
