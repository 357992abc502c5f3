#include "covhuseg/labeling.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace covhuseg {

Connectivity parse_connectivity(std::string_view text) {
  if (text == "4" || text == "four") return Connectivity::four;
  if (text == "8" || text == "eight") return Connectivity::eight;
  throw std::invalid_argument("unknown connectivity '" + std::string(text) + "' (use 4 or 8)");
}

std::string_view to_string(Connectivity c) { return c == Connectivity::four ? "4" : "8"; }

LabeledMask::LabeledMask(int width, int height, std::vector<std::int32_t> labels,
                         int component_count)
    : width_(width), height_(height), labels_(std::move(labels)), component_count_(component_count) {
  if (labels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("label data length does not match dimensions");
  }
}

std::vector<std::size_t> LabeledMask::areas() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(component_count_) + 1, 0);
  for (auto l : labels_) ++out[static_cast<std::size_t>(l)];
  return out;
}

BinaryMask LabeledMask::component_mask(int id) const {
  BinaryMask m(width_, height_);
  for (std::size_t i = 0; i < labels_.size(); ++i) m.set_at(i, labels_[i] == id);
  return m;
}

namespace {

class DisjointSets {
 public:
  std::int32_t make() {
    parent_.push_back(static_cast<std::int32_t>(parent_.size()));
    return parent_.back();
  }

  std::int32_t find(std::int32_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  // The smaller root wins, so a set's root is always its earliest provisional label.
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

LabeledMask label(const BinaryMask& mask, Connectivity conn) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::int32_t> provisional(mask.size(), -1);
  DisjointSets sets;

  auto at = [&](int x, int y) -> std::int32_t {
    return provisional[static_cast<std::size_t>(y) * w + x];
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.get(x, y)) continue;
      std::int32_t current = -1;
      auto join = [&](int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= w) return;
        const std::int32_t n = at(nx, ny);
        if (n < 0) return;
        if (current < 0) {
          current = n;
        } else {
          sets.unite(current, n);
        }
      };
      join(x - 1, y);
      join(x, y - 1);
      if (conn == Connectivity::eight) {
        join(x - 1, y - 1);
        join(x + 1, y - 1);
      }
      if (current < 0) current = sets.make();
      provisional[static_cast<std::size_t>(y) * w + x] = current;
    }
  }

  // Provisional labels are created in raster order and roots are minimal, so
  // numbering roots on first sight yields raster order of first pixels.
  std::vector<std::int32_t> final_id;
  std::vector<std::int32_t> labels(mask.size(), 0);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < provisional.size(); ++i) {
    if (provisional[i] < 0) continue;
    const std::int32_t root = sets.find(provisional[i]);
    if (static_cast<std::size_t>(root) >= final_id.size()) final_id.resize(root + 1, 0);
    if (final_id[root] == 0) final_id[root] = ++next;
    labels[i] = final_id[root];
  }
  return LabeledMask(w, h, std::move(labels), next);
}

namespace {

bool is_boundary(const LabeledMask& lm, int x, int y) {
  const std::int32_t id = lm.label(x, y);
  if (x == 0 || y == 0 || x == lm.width() - 1 || y == lm.height() - 1) return true;
  return lm.label(x - 1, y) != id || lm.label(x + 1, y) != id || lm.label(x, y - 1) != id ||
         lm.label(x, y + 1) != id;
}

}  // namespace

std::vector<Point> boundary_pixels(const LabeledMask& labeled, int id) {
  if (id < 1 || id > labeled.component_count()) {
    throw std::out_of_range("component id " + std::to_string(id) + " outside 1.." +
                            std::to_string(labeled.component_count()));
  }
  std::vector<Point> out;
  for (int y = 0; y < labeled.height(); ++y) {
    for (int x = 0; x < labeled.width(); ++x) {
      if (labeled.label(x, y) == id && is_boundary(labeled, x, y)) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<std::vector<Point>> all_boundary_pixels(const LabeledMask& labeled) {
  std::vector<std::vector<Point>> out(static_cast<std::size_t>(labeled.component_count()));
  for (int y = 0; y < labeled.height(); ++y) {
    for (int x = 0; x < labeled.width(); ++x) {
      const std::int32_t id = labeled.label(x, y);
      if (id > 0 && is_boundary(labeled, x, y)) out[id - 1].push_back({x, y});
    }
  }
  return out;
}

}  // namespace covhuseg
