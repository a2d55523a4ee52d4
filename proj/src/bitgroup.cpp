#include "pgst/bitgroup.hpp"

#include <bit>

#include "pgst/error.hpp"

namespace pgst {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kLoop: return "loop";
    case ErrorCode::kAsymmetric: return "asymmetric";
    case ErrorCode::kZeroWeight: return "zero_weight";
    case ErrorCode::kDisconnected: return "disconnected";
    case ErrorCode::kNotSymmetric: return "not_symmetric";
    case ErrorCode::kNormalization: return "normalization";
    case ErrorCode::kIndeterminate: return "indeterminate";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kTooLarge: return "too_large";
    case ErrorCode::kNotPrime: return "not_prime";
  }
  return "unknown";
}

GroupElement::GroupElement(std::uint32_t bits, int dimension)
    : bits_(bits), dimension_(dimension) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw Error(ErrorCode::kDimension,
                "group dimension must lie in [1, 24], got " + std::to_string(dimension));
  }
  if (bits >= (1u << dimension)) {
    throw Error(ErrorCode::kDimension, "element " + std::to_string(bits) +
                                           " does not fit in " + std::to_string(dimension) +
                                           " bits");
  }
}

GroupElement GroupElement::zero(int dimension) { return GroupElement(0, dimension); }

GroupElement GroupElement::all_ones(int dimension) {
  // Validate before shifting.
  GroupElement z(0, dimension);
  return GroupElement(z.order() - 1, dimension);
}

GroupElement GroupElement::basis(int j, int dimension) {
  if (j < 0 || j >= dimension) {
    throw Error(ErrorCode::kOutOfRange, "basis index " + std::to_string(j) + " out of range");
  }
  return GroupElement(1u << j, dimension);
}

GroupElement GroupElement::operator+(const GroupElement& other) const {
  if (dimension_ != other.dimension_) {
    throw Error(ErrorCode::kDimension, "group elements of different dimension");
  }
  return GroupElement(bits_ ^ other.bits_, dimension_);
}

std::string GroupElement::to_string() const {
  std::string out(static_cast<std::size_t>(dimension_), '0');
  for (int j = 0; j < dimension_; ++j) {
    // Most significant bit first, so e_0 is the last character.
    if (bit(j)) out[static_cast<std::size_t>(dimension_ - 1 - j)] = '1';
  }
  return out;
}

int hamming_weight(const GroupElement& g) noexcept { return std::popcount(g.bits()); }

int character(const GroupElement& g, const GroupElement& x) {
  if (g.dimension() != x.dimension()) {
    throw Error(ErrorCode::kDimension, "character of mismatched dimensions");
  }
  return (std::popcount(g.bits() & x.bits()) & 1) ? -1 : 1;
}

GroupElement complement(const GroupElement& g) noexcept {
  return GroupElement((g.order() - 1) ^ g.bits(), g.dimension());
}

}  // namespace pgst
