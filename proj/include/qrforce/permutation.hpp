#pragma once

#include "qrforce/rational.hpp"

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qrf {

// One-line notation: image()[i] = pi(i + 1), values in 1..k.
class Permutation
{
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int k);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i - 1]; }
  const std::vector<int> &image() const { return image_; }

  Permutation inverse() const;
  Permutation reverse() const;
  Permutation complement() const;

  // Concatenated digits for k <= 9, comma-separated otherwise.
  std::string to_string() const;

  auto operator<=>(const Permutation &) const = default;

private:
  std::vector<int> image_;
};

// Either k concatenated digits (k <= 9) or comma-separated integers.
Permutation parse_permutation(std::string_view text);

std::vector<Permutation> parse_permutation_list(std::string_view text);

// Order-isomorphic pattern of pi restricted to the 1-based positions.
Permutation subpermutation(const Permutation &pi, const std::vector<int> &positions);

// Pattern of an arbitrary sequence of distinct values.
Permutation pattern_of(const std::vector<int> &values);

Rational pattern_density_perm(const Permutation &sigma, const Permutation &pi);

struct PermMatrix
{
  int k = 0;
  std::vector<std::uint8_t> entries;

  std::uint8_t operator()(int row, int col) const { return entries[(row - 1) * k + (col - 1)]; }
};

PermMatrix permutation_matrix(const Permutation &pi);

// The eight symmetries of the square acting on permutation matrices.
enum class Symmetry
{
  identity,
  reverse,
  complement,
  inverse,
  rotate180,
  rotate90,
  rotate270,
  antitranspose,
};

inline constexpr std::array<Symmetry, 8> all_symmetries = {
  Symmetry::identity, Symmetry::reverse,  Symmetry::complement, Symmetry::inverse,
  Symmetry::rotate180, Symmetry::rotate90, Symmetry::rotate270,  Symmetry::antitranspose,
};

Permutation apply(Symmetry g, const Permutation &pi);

std::string_view symmetry_name(Symmetry g);

using PermSet = std::set<Permutation>;

std::set<PermSet> dihedral_orbit(const PermSet &pis);

std::vector<Permutation> enumerate_Sk(int k);

} // namespace qrf
