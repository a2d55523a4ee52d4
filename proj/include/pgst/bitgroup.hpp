#pragma once

// Elements and characters of the elementary abelian group Z_2^d.
//
// An element is a d-bit mask. Bit 0 is the distinguished coordinate g_0:
// hypercube edges in direction 0 are the ones that carry the modified weight.

#include <cstdint>
#include <string>

namespace pgst {

/// Largest dimension accepted anywhere a path may enumerate all 2^d elements.
inline constexpr int kMaxDimension = 24;

class GroupElement {
 public:
  /// Throws Error(kDimension) when d is outside [1, kMaxDimension] or bits >= 2^d.
  GroupElement(std::uint32_t bits, int dimension);

  static GroupElement zero(int dimension);
  static GroupElement all_ones(int dimension);
  /// Standard basis element e_j.
  static GroupElement basis(int j, int dimension);

  std::uint32_t bits() const noexcept { return bits_; }
  int dimension() const noexcept { return dimension_; }
  int bit(int j) const noexcept { return static_cast<int>((bits_ >> j) & 1u); }
  std::uint32_t order() const noexcept { return 1u << dimension_; }

  /// Group operation (bitwise XOR). Throws on dimension mismatch.
  GroupElement operator+(const GroupElement& other) const;

  bool operator==(const GroupElement&) const = default;

  std::string to_string() const;

 private:
  std::uint32_t bits_;
  int dimension_;
};

int hamming_weight(const GroupElement& g) noexcept;

/// psi_g(x) = (-1)^{<g, x>}; returns +1 or -1.
int character(const GroupElement& g, const GroupElement& x);

/// all-ones minus g, i.e. the bitwise complement within d bits.
GroupElement complement(const GroupElement& g) noexcept;

}  // namespace pgst
