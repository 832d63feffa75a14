#include "zkpol/pairing.hpp"

#include <vector>

#include "zkpol/error.hpp"

namespace zkpol {

const mpz_class& GtElement::p() const {
  if (curve_ == nullptr) throw Error(ErrorCode::InvalidParameters, "unbound target element");
  return curve_->p();
}

GtElement GtElement::operator*(const GtElement& rhs) const {
  const mpz_class& m = p();
  // Karatsuba-style: (a + bi)(c + di) = (ac - bd) + ((a + b)(c + d) - ac - bd) i
  mpz_class ac = re_ * rhs.re_;
  mpz_class bd = im_ * rhs.im_;
  mpz_class cross = (re_ + im_) * (rhs.re_ + rhs.im_) - ac - bd;
  mpz_class re = ac - bd;
  mpz_mod(re.get_mpz_t(), re.get_mpz_t(), m.get_mpz_t());
  mpz_mod(cross.get_mpz_t(), cross.get_mpz_t(), m.get_mpz_t());
  return GtElement(curve_, std::move(re), std::move(cross));
}

GtElement GtElement::square() const {
  const mpz_class& m = p();
  // (a + bi)^2 = (a + b)(a - b) + 2ab i
  mpz_class re = (re_ + im_) * (re_ - im_);
  mpz_class im = 2 * re_ * im_;
  mpz_mod(re.get_mpz_t(), re.get_mpz_t(), m.get_mpz_t());
  mpz_mod(im.get_mpz_t(), im.get_mpz_t(), m.get_mpz_t());
  return GtElement(curve_, std::move(re), std::move(im));
}

GtElement GtElement::conjugate() const {
  mpz_class im = im_ == 0 ? mpz_class(0) : mpz_class(p() - im_);
  return GtElement(curve_, re_, std::move(im));
}

GtElement GtElement::inverse() const {
  const mpz_class& m = p();
  mpz_class norm = (re_ * re_ + im_ * im_) % m;
  if (norm == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in F_p^2");
  mpz_invert(norm.get_mpz_t(), norm.get_mpz_t(), m.get_mpz_t());
  GtElement c = conjugate();
  mpz_class re = (c.re_ * norm) % m;
  mpz_class im = (c.im_ * norm) % m;
  return GtElement(curve_, std::move(re), std::move(im));
}

GtElement GtElement::pow(const mpz_class& exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  GtElement acc(curve_, 1, 0);
  const std::size_t bits = exponent == 0 ? 0 : mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = acc.square();
    if (mpz_tstbit(exponent.get_mpz_t(), i)) acc = acc * *this;
  }
  return acc;
}

Bytes GtElement::encode() const {
  const std::size_t w = curve_->coordinate_bytes();
  Bytes out = encode_fixed(re_, w);
  append(out, encode_fixed(im_, w));
  return out;
}

std::shared_ptr<const PairingEngine> PairingEngine::create(const mpz_class& p,
                                                           const mpz_class& order) {
  return std::shared_ptr<const PairingEngine>(new PairingEngine(p, order));
}

PairingEngine::PairingEngine(const mpz_class& p, const mpz_class& order)
    : curve_(p, order),
      scalar_field_(order),
      generator_(curve_.hash_to_subgroup("zkpol-g1-v1")),
      final_exponent_((p + 1) / order) {}

GroupElement PairingEngine::group_exp(const GroupElement& base, const FieldElement& k) const {
  return curve_.mul(base, k.value());
}

GroupElement PairingEngine::multi_exp(std::span<const GroupElement> bases,
                                      std::span<const FieldElement> scalars) const {
  std::vector<mpz_class> raw;
  raw.reserve(scalars.size());
  for (const auto& s : scalars) raw.push_back(s.value());
  return curve_.multi_exp(bases, raw);
}

// Miller loop for f_{r,P} evaluated at psi(Q) = (-xQ, i*yQ). Vertical lines
// evaluate into F_p and vanish under the final exponentiation, so they are
// skipped. Every line through T with slope lambda evaluates to
// (lambda * (xQ + xT) - yT) + yQ * i.
GtElement PairingEngine::miller_loop(const GroupElement& a, const GroupElement& b) const {
  const mpz_class& m = curve_.p();
  const mpz_class& r = curve_.order();
  const mpz_class& xq = b.x();
  const mpz_class& yq = b.y();

  mpz_class xt = a.x();
  mpz_class yt = a.y();
  bool t_infinity = false;
  GtElement f(&curve_, 1, 0);

  auto line = [&](const mpz_class& lambda) {
    mpz_class re = lambda * (xq + xt) - yt;
    mpz_mod(re.get_mpz_t(), re.get_mpz_t(), m.get_mpz_t());
    return GtElement(&curve_, std::move(re), yq);
  };

  mpz_class lambda, num, den, x3, y3;
  const std::size_t bits = mpz_sizeinbase(r.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    if (t_infinity) break;  // unreachable for prime r > 2
    // Doubling step; yT != 0 because T has odd order.
    num = 3 * xt * xt + 1;
    den = 2 * yt;
    mpz_invert(den.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    lambda = num * den;
    mpz_mod(lambda.get_mpz_t(), lambda.get_mpz_t(), m.get_mpz_t());
    f = f.square() * line(lambda);
    x3 = lambda * lambda - 2 * xt;
    mpz_mod(x3.get_mpz_t(), x3.get_mpz_t(), m.get_mpz_t());
    y3 = lambda * (xt - x3) - yt;
    mpz_mod(y3.get_mpz_t(), y3.get_mpz_t(), m.get_mpz_t());
    xt = x3;
    yt = y3;

    if (mpz_tstbit(r.get_mpz_t(), i)) {
      if (xt == a.x()) {
        // T = -P: vertical line, T + P = O.
        t_infinity = true;
        continue;
      }
      num = a.y() - yt;
      den = a.x() - xt;
      mpz_mod(den.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
      mpz_invert(den.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
      lambda = num * den;
      mpz_mod(lambda.get_mpz_t(), lambda.get_mpz_t(), m.get_mpz_t());
      f = f * line(lambda);
      x3 = lambda * lambda - xt - a.x();
      mpz_mod(x3.get_mpz_t(), x3.get_mpz_t(), m.get_mpz_t());
      y3 = lambda * (xt - x3) - yt;
      mpz_mod(y3.get_mpz_t(), y3.get_mpz_t(), m.get_mpz_t());
      xt = x3;
      yt = y3;
    }
  }
  return f;
}

// f^((p^2 - 1) / r) = (conj(f) / f)^((p + 1) / r), using f^p = conj(f).
GtElement PairingEngine::final_exponentiation(const GtElement& f) const {
  GtElement g = f.conjugate() * f.inverse();
  return g.pow(final_exponent_);
}

GtElement PairingEngine::pairing(const GroupElement& a, const GroupElement& b) const {
  if (a.is_identity() || b.is_identity()) return gt_one();
  return final_exponentiation(miller_loop(a, b));
}

}  // namespace zkpol
