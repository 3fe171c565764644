#include "antidice/convolution.hpp"

#include <algorithm>
#include <cstring>
#include <optional>

#include "antidice/errors.hpp"

static_assert(GMP_NAIL_BITS == 0, "Kronecker packing assumes nail-free limbs");

namespace antidice {

namespace {

constexpr std::size_t kLimbBits = GMP_NUMB_BITS;
// Below this length the packing overhead outweighs fast multiplication.
constexpr std::size_t kKroneckerMinLength = 40;

std::size_t bit_length(const BigInt& z) {
  return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

std::size_t max_bit_length(std::span<const BigInt> w) {
  std::size_t bits = 0;
  for (const BigInt& x : w) bits = std::max(bits, bit_length(x));
  return bits;
}

BigInt pack(std::span<const BigInt> w, std::size_t bits) {
  const std::size_t nlimbs = w.size() * bits / kLimbBits + 2;
  std::vector<mp_limb_t> buf(nlimbs, 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    mpz_srcptr z = w[i].get_mpz_t();
    const std::size_t sz = mpz_size(z);
    const mp_limb_t* lp = mpz_limbs_read(z);
    const std::size_t off = i * bits;
    const std::size_t li = off / kLimbBits;
    const unsigned sh = static_cast<unsigned>(off % kLimbBits);
    for (std::size_t j = 0; j < sz; ++j) {
      buf[li + j] |= lp[j] << sh;
      if (sh != 0) buf[li + j + 1] |= lp[j] >> (kLimbBits - sh);
    }
  }
  BigInt out;
  mp_limb_t* dst = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(nlimbs));
  std::memcpy(dst, buf.data(), nlimbs * sizeof(mp_limb_t));
  mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(nlimbs));
  return out;
}

std::vector<BigInt> unpack(const BigInt& packed, std::size_t count, std::size_t bits) {
  std::vector<BigInt> out(count);
  mpz_srcptr p = packed.get_mpz_t();
  const mp_limb_t* pp = mpz_limbs_read(p);
  const std::size_t psz = mpz_size(p);
  const std::size_t words = (bits + kLimbBits - 1) / kLimbBits;
  std::vector<mp_limb_t> tmp(words + 2);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t off = i * bits;
    const std::size_t li = off / kLimbBits;
    if (li >= psz) break;
    const unsigned sh = static_cast<unsigned>(off % kLimbBits);
    const std::size_t need = (sh + bits + kLimbBits - 1) / kLimbBits;
    const std::size_t avail = std::min(need, psz - li);
    std::fill(tmp.begin(), tmp.end(), 0);
    std::memcpy(tmp.data(), pp + li, avail * sizeof(mp_limb_t));
    if (sh != 0) mpn_rshift(tmp.data(), tmp.data(), static_cast<mp_size_t>(avail), sh);
    for (std::size_t w = avail; w < words; ++w) tmp[w] = 0;
    if (bits % kLimbBits != 0) tmp[words - 1] &= (mp_limb_t{1} << (bits % kLimbBits)) - 1;
    mp_limb_t* dst = mpz_limbs_write(out[i].get_mpz_t(), static_cast<mp_size_t>(words));
    std::memcpy(dst, tmp.data(), words * sizeof(mp_limb_t));
    mpz_limbs_finish(out[i].get_mpz_t(), static_cast<mp_size_t>(words));
  }
  return out;
}

std::vector<std::size_t> nonzero_indices(std::span<const BigInt> w) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0) idx.push_back(i);
  }
  return idx;
}

void check_stop(const std::stop_token& stop) {
  if (stop.stop_requested()) throw Cancelled();
}

}  // namespace

namespace detail {

std::vector<BigInt> schoolbook_product(std::span<const BigInt> a, std::span<const BigInt> b) {
  std::vector<BigInt> out(a.size() + b.size() - 1);
  std::vector<std::size_t> ia = nonzero_indices(a);
  std::vector<std::size_t> ib = nonzero_indices(b);
  if (ia.size() < ib.size()) {
    std::swap(a, b);
    std::swap(ia, ib);
  }
  // b is now the sparser side and drives the inner loop.
  const bool small_b = std::all_of(ib.begin(), ib.end(), [&](std::size_t j) { return b[j].fits_ulong_p(); });
  for (std::size_t i : ia) {
    mpz_srcptr ai = a[i].get_mpz_t();
    for (std::size_t j : ib) {
      mpz_ptr dst = out[i + j].get_mpz_t();
      if (small_b) {
        mpz_addmul_ui(dst, ai, b[j].get_ui());
      } else {
        mpz_addmul(dst, ai, b[j].get_mpz_t());
      }
    }
  }
  return out;
}

std::vector<BigInt> kronecker_product(std::span<const BigInt> a, std::span<const BigInt> b) {
  const BigInt shortest(static_cast<unsigned long>(std::min(a.size(), b.size())));
  // Every output coefficient is below 2^bits, so the packed slots never carry.
  const std::size_t bits = max_bit_length(a) + max_bit_length(b) + bit_length(shortest);
  const bool squaring = a.data() == b.data() && a.size() == b.size();
  const BigInt pa = pack(a, bits);
  BigInt product;
  if (squaring) {
    mpz_mul(product.get_mpz_t(), pa.get_mpz_t(), pa.get_mpz_t());
  } else {
    const BigInt pb = pack(b, bits);
    mpz_mul(product.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
  }
  return unpack(product, a.size() + b.size() - 1, bits);
}

}  // namespace detail

LatticeDistribution convolve(const LatticeDistribution& lhs, const LatticeDistribution& rhs,
                             ConvolutionKernel kernel) {
  if (kernel == ConvolutionKernel::automatic) {
    kernel = std::min(lhs.size(), rhs.size()) < kKroneckerMinLength ? ConvolutionKernel::schoolbook
                                                                     : ConvolutionKernel::kronecker;
  }
  std::vector<BigInt> w = kernel == ConvolutionKernel::schoolbook
                              ? detail::schoolbook_product(lhs.weights(), rhs.weights())
                              : detail::kronecker_product(lhs.weights(), rhs.weights());
  return make_trusted_distribution(lhs.offset() + rhs.offset(), std::move(w),
                                   lhs.total() * rhs.total());
}

LatticeDistribution power(const LatticeDistribution& base, std::uint64_t k, ConvolutionKernel kernel,
                          std::stop_token stop) {
  LatticeDistribution result = LatticeDistribution::delta(0);
  LatticeDistribution square = base;
  bool first = true;
  while (k > 0) {
    check_stop(stop);
    if (k & 1) {
      result = first ? square : convolve(result, square, kernel);
      first = false;
    }
    k >>= 1;
    if (k > 0) {
      check_stop(stop);
      square = convolve(square, square, kernel);
    }
  }
  return result;
}

PowerCache::PowerCache(LatticeDistribution base, ConvolutionKernel kernel) : kernel_(kernel) {
  squares_.push_back(std::move(base));
}

const LatticeDistribution& PowerCache::square(unsigned i, std::stop_token stop) {
  while (squares_.size() <= i) {
    check_stop(stop);
    const LatticeDistribution& last = squares_.back();
    squares_.push_back(convolve(last, last, kernel_));
  }
  return squares_[i];
}

LatticeDistribution PowerCache::power(std::uint64_t k, std::stop_token stop) {
  std::optional<LatticeDistribution> result;
  for (unsigned i = 0; k != 0; ++i, k >>= 1) {
    if ((k & 1) == 0) continue;
    const LatticeDistribution& sq = square(i, stop);
    check_stop(stop);
    result = result ? convolve(*result, sq, kernel_) : sq;
  }
  return result ? std::move(*result) : LatticeDistribution::delta(0);
}

RollSeries::RollSeries(LatticeDistribution base, ConvolutionKernel kernel)
    : cache_(std::move(base), kernel), kernel_(kernel), current_(LatticeDistribution::delta(0)) {}

void RollSeries::seek(std::uint64_t k, std::stop_token stop) {
  current_ = cache_.power(k, stop);
  rolls_ = k;
}

void RollSeries::restore(std::uint64_t k, LatticeDistribution current) {
  current_ = std::move(current);
  rolls_ = k;
}

void RollSeries::advance() {
  current_ = rolls_ == 0 ? cache_.base() : convolve(current_, cache_.base(), kernel_);
  ++rolls_;
}

}  // namespace antidice
