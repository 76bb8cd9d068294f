#include "posred/feasible/pattern.hpp"

#include "posred/error.hpp"

namespace posred::feasible {

SparsityPattern::SparsityPattern(Mask zero_a, Mask zero_b, Mask zero_c)
    : zero_a_(std::move(zero_a)), zero_b_(std::move(zero_b)), zero_c_(std::move(zero_c)) {
  if (zero_a_.rows() != zero_a_.cols()) throw PreconditionError("A pattern must be square");
  if (zero_b_.rows() != zero_a_.rows() || zero_c_.cols() != zero_a_.rows()) {
    throw PreconditionError("B/C patterns do not match the reduced order");
  }
  for (Index i = 0; i < zero_a_.rows(); ++i) {
    if (zero_a_(i, i)) throw PreconditionError("A pattern may not pin diagonal entries");
  }
}

SparsityPattern SparsityPattern::unconstrained(Index r, Index m, Index p) {
  return {Mask::Constant(r, r, false), Mask::Constant(r, m, false), Mask::Constant(p, r, false)};
}

std::vector<std::pair<Index, Index>> SparsityPattern::pairs(const Mask& mask) {
  std::vector<std::pair<Index, Index>> out;
  for (Index j = 0; j < mask.cols(); ++j) {
    for (Index i = 0; i < mask.rows(); ++i) {
      if (mask(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

void mix(std::uint64_t& h, std::uint64_t value) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (value >> (8 * byte)) & 0xffu;
    h *= 0x100000001b3ull;
  }
}

void mix_mask(std::uint64_t& h, const SparsityPattern::Mask& mask) {
  mix(h, static_cast<std::uint64_t>(mask.rows()));
  mix(h, static_cast<std::uint64_t>(mask.cols()));
  for (const auto& [i, j] : SparsityPattern::pairs(mask)) {
    mix(h, static_cast<std::uint64_t>(i));
    mix(h, static_cast<std::uint64_t>(j));
  }
}

bool zeros_hold(const SparsityPattern::Mask& mask, const DenseMatrix& m) {
  if (m.rows() != mask.rows() || m.cols() != mask.cols()) return false;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (mask(i, j) && m(i, j) != 0.0) return false;
    }
  }
  return true;
}

}  // namespace

std::uint64_t SparsityPattern::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  mix_mask(h, zero_a_);
  mix_mask(h, zero_b_);
  mix_mask(h, zero_c_);
  return h;
}

bool SparsityPattern::respected_by(const DenseMatrix& ar, const DenseMatrix& br,
                                   const DenseMatrix& cr) const {
  return zeros_hold(zero_a_, ar) && zeros_hold(zero_b_, br) && zeros_hold(zero_c_, cr);
}

bool SparsityPattern::operator==(const SparsityPattern& other) const {
  auto same = [](const Mask& x, const Mask& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && (x == y).all();
  };
  return same(zero_a_, other.zero_a_) && same(zero_b_, other.zero_b_) &&
         same(zero_c_, other.zero_c_);
}

}  // namespace posred::feasible
