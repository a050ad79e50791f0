#include "powpres/permutation.hpp"

#include <numeric>

#include "powpres/errors.hpp"

namespace powpres {

Permutation::Permutation(uint32_t degree) {
  img_.resize(degree);
  std::iota(img_.begin(), img_.end(), 0u);
}

Permutation Permutation::from_images(std::vector<uint32_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (uint32_t v : images) {
    if (v >= images.size() || seen[v])
      throw precondition_error("permutation images are not a bijection");
    seen[v] = true;
  }
  Permutation p;
  p.img_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(uint32_t degree,
                                     const std::vector<std::vector<uint32_t>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (uint32_t x : c) {
      if (x >= degree) throw precondition_error("cycle point out of range");
      if (used[x]) throw precondition_error("cycles are not disjoint");
      used[x] = true;
    }
    for (size_t i = 0; i < c.size(); ++i) p.img_[c[i]] = c[(i + 1) % c.size()];
  }
  return p;
}

bool Permutation::is_identity() const {
  for (uint32_t i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

uint32_t Permutation::first_moved_point() const {
  for (uint32_t i = 0; i < degree(); ++i)
    if (img_[i] != i) return i;
  return degree();
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree())
    throw precondition_error("permutation degrees differ in product");
  Permutation out;
  out.img_.resize(degree());
  for (uint32_t i = 0; i < degree(); ++i) out.img_[i] = rhs.img_[img_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.img_.resize(degree());
  for (uint32_t i = 0; i < degree(); ++i) out.img_[img_[i]] = i;
  return out;
}

std::string Permutation::cycle_string() const {
  std::string s;
  std::vector<bool> seen(degree(), false);
  for (uint32_t i = 0; i < degree(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    s += "(" + std::to_string(i);
    seen[i] = true;
    for (uint32_t j = img_[i]; j != i; j = img_[j]) {
      seen[j] = true;
      s += " " + std::to_string(j);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Permutation embed_block(const Permutation& p, uint32_t m, uint32_t factor) {
  if (factor >= m) throw precondition_error("embed_block: factor out of range");
  const uint32_t d = p.degree();
  Permutation out(m * d);
  std::vector<uint32_t> img = out.images();
  for (uint32_t x = 0; x < d; ++x) img[factor * d + x] = factor * d + p.apply(x);
  return Permutation::from_images(std::move(img));
}

Permutation embed_diagonal(const Permutation& p, uint32_t m) {
  const uint32_t d = p.degree();
  std::vector<uint32_t> img(m * d);
  for (uint32_t j = 0; j < m; ++j)
    for (uint32_t x = 0; x < d; ++x) img[j * d + x] = j * d + p.apply(x);
  return Permutation::from_images(std::move(img));
}

Permutation restrict_blocks(const Permutation& p, uint32_t blocks, uint32_t live) {
  if (blocks == 0 || p.degree() % blocks != 0)
    throw precondition_error("restrict_blocks: degree is not a multiple of the block count");
  if (live > blocks) throw precondition_error("restrict_blocks: live > blocks");
  const uint32_t d = p.degree() / blocks;
  std::vector<uint32_t> img(live * d);
  for (uint32_t x = 0; x < live * d; ++x) {
    uint32_t y = p.apply(x);
    if (y >= live * d)
      throw precondition_error("restrict_blocks: permutation crosses the block boundary");
    img[x] = y;
  }
  return Permutation::from_images(std::move(img));
}

Permutation evaluate_word(const Word& w, const std::vector<Permutation>& images) {
  if (images.empty() && !w.empty())
    throw precondition_error("evaluate_word: no generator images");
  const uint32_t deg = images.empty() ? 0 : images[0].degree();
  for (const auto& p : images)
    if (p.degree() != deg)
      throw precondition_error("evaluate_word: generator image degrees differ");

  std::vector<Permutation> inv(images.size());
  Permutation acc(deg);
  for (Letter l : w.letters()) {
    uint32_t g = letter_gen(l);
    if (g >= images.size())
      throw precondition_error("evaluate_word: word leaves the image alphabet");
    if (letter_sign(l) > 0) {
      acc = acc * images[g];
    } else {
      if (inv[g].degree() == 0 && deg != 0) inv[g] = images[g].inverse();
      acc = acc * inv[g];
    }
  }
  return acc;
}

}  // namespace powpres
