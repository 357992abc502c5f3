#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "covhuseg/dataset.hpp"
#include "tempdir.hpp"

namespace covhuseg::testkit {

/// Writes groups x subjects x patches image/mask pairs in the default layout.
/// Files are tiny valid PGMs; subject ids are "<group>_s<k>".
inline void write_dataset(const std::filesystem::path& root, const std::vector<std::string>& groups,
                          int subjects, int patches) {
  for (const auto& g : groups) {
    for (int s = 0; s < subjects; ++s) {
      const std::string subject = g + "_s" + std::to_string(s);
      for (int p = 0; p < patches; ++p) {
        const std::string stem = "p" + std::to_string(p);
        const auto base = root / g / subject;
        write_bytes(base / "img" / (stem + "_img.pgm"), pgm_bytes(1, 1, {200}));
        write_bytes(base / "mask" / (stem + "_mask.pgm"), pgm_bytes(1, 1, {255}));
      }
    }
  }
}

inline Manifest synthetic_manifest(int subjects, int patches) {
  Manifest m;
  for (Group g : {Group::normal, Group::n56Nx, Group::DN, Group::NEP25}) {
    for (int s = 0; s < subjects; ++s) {
      const std::string subject = std::string(to_string(g)) + "_s" + std::to_string(s);
      for (int p = 0; p < patches; ++p) {
        const std::string stem = "p" + std::to_string(p);
        m.push_back({subject, g, subject + "/" + stem + "_img.png", subject + "/" + stem + "_mask.png"});
      }
    }
  }
  sort_manifest(m);
  return m;
}

}  // namespace covhuseg::testkit
