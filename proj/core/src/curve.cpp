#include "zkpol/curve.hpp"

#include <algorithm>
#include <vector>

#include "zkpol/error.hpp"
#include "zkpol/hash.hpp"

namespace zkpol {

namespace {

struct Jacobian {
  mpz_class X{0};
  mpz_class Y{1};
  mpz_class Z{0};

  bool is_infinity() const { return Z == 0; }
};

// Modular helpers over the base field; all results are in [0, p).
class Arith {
 public:
  explicit Arith(const mpz_class& p) : p_(p) {}

  void reduce(mpz_class& a) const { mpz_mod(a.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()); }
  void mul(mpz_class& out, const mpz_class& a, const mpz_class& b) const {
    mpz_mul(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    reduce(out);
  }
  void sqr(mpz_class& out, const mpz_class& a) const { mul(out, a, a); }
  void sub(mpz_class& out, const mpz_class& a, const mpz_class& b) const {
    mpz_sub(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (out < 0) out += p_;
  }
  void add(mpz_class& out, const mpz_class& a, const mpz_class& b) const {
    mpz_add(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (out >= p_) out -= p_;
  }

  // Doubling for a = 1 (dbl-2007-bl).
  void dbl(Jacobian& r, const Jacobian& a) const {
    if (a.is_infinity() || a.Y == 0) {
      r = Jacobian{};
      return;
    }
    mpz_class xx, yy, yyyy, zz, s, m, t;
    sqr(xx, a.X);
    sqr(yy, a.Y);
    sqr(yyyy, yy);
    sqr(zz, a.Z);
    add(s, a.X, yy);
    sqr(s, s);
    sub(s, s, xx);
    sub(s, s, yyyy);
    add(s, s, s);
    sqr(m, zz);  // a * ZZ^2 with a = 1
    add(m, m, xx);
    add(m, m, xx);
    add(m, m, xx);
    mpz_class z3;
    add(z3, a.Y, a.Z);
    sqr(z3, z3);
    sub(z3, z3, yy);
    sub(z3, z3, zz);
    sqr(t, m);
    sub(t, t, s);
    sub(t, t, s);
    r.X = t;
    sub(s, s, t);
    mul(s, m, s);
    add(yyyy, yyyy, yyyy);
    add(yyyy, yyyy, yyyy);
    add(yyyy, yyyy, yyyy);
    sub(r.Y, s, yyyy);
    r.Z = std::move(z3);
  }

  // r = a + (x2, y2) with the second operand affine (madd-2007-bl).
  void add_mixed(Jacobian& r, const Jacobian& a, const mpz_class& x2, const mpz_class& y2) const {
    if (a.is_infinity()) {
      r.X = x2;
      r.Y = y2;
      r.Z = 1;
      return;
    }
    mpz_class z1z1, u2, s2, h, hh, i, j, rr, v;
    sqr(z1z1, a.Z);
    mul(u2, x2, z1z1);
    mul(s2, y2, a.Z);
    mul(s2, s2, z1z1);
    sub(h, u2, a.X);
    sub(rr, s2, a.Y);
    if (h == 0) {
      if (rr == 0) {
        dbl(r, a);
      } else {
        r = Jacobian{};
      }
      return;
    }
    add(rr, rr, rr);
    sqr(hh, h);
    add(i, hh, hh);
    add(i, i, i);
    mul(j, h, i);
    mul(v, a.X, i);
    mpz_class x3, y3, z3;
    sqr(x3, rr);
    sub(x3, x3, j);
    sub(x3, x3, v);
    sub(x3, x3, v);
    sub(y3, v, x3);
    mul(y3, rr, y3);
    mul(j, a.Y, j);
    add(j, j, j);
    sub(y3, y3, j);
    add(z3, a.Z, h);
    sqr(z3, z3);
    sub(z3, z3, z1z1);
    sub(z3, z3, hh);
    r.X = std::move(x3);
    r.Y = std::move(y3);
    r.Z = std::move(z3);
  }

  // add-2007-bl.
  void add_full(Jacobian& r, const Jacobian& a, const Jacobian& b) const {
    if (a.is_infinity()) {
      r = b;
      return;
    }
    if (b.is_infinity()) {
      r = a;
      return;
    }
    mpz_class z1z1, z2z2, u1, u2, s1, s2, h, i, j, rr, v;
    sqr(z1z1, a.Z);
    sqr(z2z2, b.Z);
    mul(u1, a.X, z2z2);
    mul(u2, b.X, z1z1);
    mul(s1, a.Y, b.Z);
    mul(s1, s1, z2z2);
    mul(s2, b.Y, a.Z);
    mul(s2, s2, z1z1);
    sub(h, u2, u1);
    sub(rr, s2, s1);
    if (h == 0) {
      if (rr == 0) {
        dbl(r, a);
      } else {
        r = Jacobian{};
      }
      return;
    }
    add(rr, rr, rr);
    add(i, h, h);
    sqr(i, i);
    mul(j, h, i);
    mul(v, u1, i);
    mpz_class x3, y3, z3;
    sqr(x3, rr);
    sub(x3, x3, j);
    sub(x3, x3, v);
    sub(x3, x3, v);
    sub(y3, v, x3);
    mul(y3, rr, y3);
    mul(s1, s1, j);
    add(s1, s1, s1);
    sub(y3, y3, s1);
    add(z3, a.Z, b.Z);
    sqr(z3, z3);
    sub(z3, z3, z1z1);
    sub(z3, z3, z2z2);
    mul(z3, z3, h);
    r.X = std::move(x3);
    r.Y = std::move(y3);
    r.Z = std::move(z3);
  }

 private:
  const mpz_class& p_;
};

}  // namespace

const Curve& GroupElement::curve() const {
  if (curve_ == nullptr) throw Error(ErrorCode::InvalidParameters, "unbound group element");
  return *curve_;
}

GroupElement GroupElement::operator+(const GroupElement& rhs) const { return curve().add(*this, rhs); }
GroupElement GroupElement::operator-() const { return curve().negate(*this); }
GroupElement GroupElement::operator-(const GroupElement& rhs) const {
  return curve().add(*this, curve().negate(rhs));
}
Bytes GroupElement::encode() const { return curve().encode(*this); }

Curve::Curve(mpz_class p, mpz_class order) : base_field_(std::move(p)), order_(std::move(order)) {
  if (mpz_fdiv_ui(this->p().get_mpz_t(), 4) != 3) {
    throw Error(ErrorCode::InvalidParameters, "curve prime must be 3 mod 4");
  }
  if (order_ < 3 || mpz_probab_prime_p(order_.get_mpz_t(), 40) == 0) {
    throw Error(ErrorCode::InvalidParameters, "group order must be an odd prime");
  }
  mpz_class n = this->p() + 1;
  if (mpz_divisible_p(n.get_mpz_t(), order_.get_mpz_t()) == 0) {
    throw Error(ErrorCode::InvalidParameters, "group order must divide p + 1");
  }
  cofactor_ = n / order_;
}

bool Curve::is_on_curve(const mpz_class& x, const mpz_class& y) const {
  if (x < 0 || y < 0 || x >= p() || y >= p()) return false;
  mpz_class lhs = y * y;
  mpz_class rhs = x * x * x + x;
  return mpz_congruent_p(lhs.get_mpz_t(), rhs.get_mpz_t(), p().get_mpz_t()) != 0;
}

GroupElement Curve::point(mpz_class x, mpz_class y) const {
  if (!is_on_curve(x, y)) throw Error(ErrorCode::InvalidEncoding, "point not on curve");
  return GroupElement(this, std::move(x), std::move(y), false);
}

bool Curve::in_subgroup(const GroupElement& a) const {
  if (a.is_identity()) return true;
  if (!is_on_curve(a.x(), a.y())) return false;
  return mul(a, order_).is_identity();
}

GroupElement Curve::hash_to_subgroup(std::string_view tag) const {
  const mpz_class exponent = (p() + 1) / 4;
  for (std::uint64_t counter = 0;; ++counter) {
    // Enough hash output to cover p with 128 bits of slack.
    mpz_class x;
    const std::size_t blocks = (base_field_.bits() + 128 + 255) / 256;
    Bytes wide;
    for (std::size_t b = 0; b < blocks; ++b) {
      Bytes input(as_bytes(tag).begin(), as_bytes(tag).end());
      append_u64(input, counter);
      append_u8(input, static_cast<std::uint8_t>(b));
      Digest32 d = hash_bytes(input);
      append(wide, d);
    }
    x = decode_unsigned(wide);
    x %= p();
    mpz_class rhs = (x * x * x + x) % p();
    if (rhs == 0 || mpz_legendre(rhs.get_mpz_t(), p().get_mpz_t()) != 1) continue;
    mpz_class y;
    mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), exponent.get_mpz_t(), p().get_mpz_t());
    if (y > p() - y) y = p() - y;
    GroupElement candidate = mul(point(x, y), cofactor_);
    if (!candidate.is_identity()) return candidate;
  }
}

GroupElement Curve::negate(const GroupElement& a) const {
  if (a.is_identity()) return a;
  mpz_class y = a.y() == 0 ? mpz_class(0) : mpz_class(p() - a.y());
  return GroupElement(this, a.x(), std::move(y), false);
}

GroupElement Curve::add(const GroupElement& a, const GroupElement& b) const {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  const mpz_class& pm = p();
  mpz_class lambda;
  if (a.x() == b.x()) {
    mpz_class ysum = (a.y() + b.y()) % pm;
    if (ysum == 0) return identity();
    mpz_class num = (3 * a.x() * a.x() + 1) % pm;
    mpz_class den = (2 * a.y()) % pm;
    mpz_invert(den.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
    lambda = (num * den) % pm;
  } else {
    mpz_class num = b.y() - a.y();
    mpz_class den = b.x() - a.x();
    mpz_mod(den.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
    mpz_invert(den.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
    lambda = num * den;
    mpz_mod(lambda.get_mpz_t(), lambda.get_mpz_t(), pm.get_mpz_t());
  }
  mpz_class x3 = lambda * lambda - a.x() - b.x();
  mpz_mod(x3.get_mpz_t(), x3.get_mpz_t(), pm.get_mpz_t());
  mpz_class y3 = lambda * (a.x() - x3) - a.y();
  mpz_mod(y3.get_mpz_t(), y3.get_mpz_t(), pm.get_mpz_t());
  return GroupElement(this, std::move(x3), std::move(y3), false);
}

namespace {

GroupElement to_affine(const Curve& curve, const Jacobian& j, const mpz_class& p) {
  if (j.is_infinity()) return curve.identity();
  mpz_class zinv;
  mpz_invert(zinv.get_mpz_t(), j.Z.get_mpz_t(), p.get_mpz_t());
  mpz_class zinv2 = (zinv * zinv) % p;
  mpz_class x = (j.X * zinv2) % p;
  mpz_class y = (j.Y * ((zinv2 * zinv) % p)) % p;
  return curve.point(std::move(x), std::move(y));
}

}  // namespace

GroupElement Curve::mul(const GroupElement& base, const mpz_class& k) const {
  if (k == 0 || base.is_identity()) return identity();
  if (k < 0) return mul(negate(base), -k);
  Arith arith(p());
  Jacobian acc;
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    arith.dbl(acc, acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) arith.add_mixed(acc, acc, base.x(), base.y());
  }
  return to_affine(*this, acc, p());
}

GroupElement Curve::multi_exp(std::span<const GroupElement> bases,
                              std::span<const mpz_class> scalars) const {
  if (bases.size() != scalars.size()) {
    throw Error(ErrorCode::InvalidParameters, "multi_exp length mismatch");
  }
  std::vector<std::size_t> active;
  std::size_t max_bits = 0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (scalars[i] < 0) throw Error(ErrorCode::InvalidParameters, "negative multi_exp scalar");
    if (scalars[i] == 0 || bases[i].is_identity()) continue;
    active.push_back(i);
    max_bits = std::max(max_bits, mpz_sizeinbase(scalars[i].get_mpz_t(), 2));
  }
  if (active.empty()) return identity();
  if (active.size() == 1) return mul(bases[active[0]], scalars[active[0]]);

  std::size_t log_n = 0;
  while ((std::size_t{1} << (log_n + 1)) <= active.size()) ++log_n;
  const std::size_t window = std::clamp<std::size_t>(log_n > 2 ? log_n - 2 : 1, 1, 16);
  const std::size_t windows = (max_bits + window - 1) / window;

  Arith arith(p());
  Jacobian result;
  std::vector<Jacobian> buckets(std::size_t{1} << window);
  for (std::size_t w = windows; w-- > 0;) {
    for (std::size_t d = 0; d < window; ++d) arith.dbl(result, result);
    for (auto& b : buckets) b = Jacobian{};
    for (std::size_t i : active) {
      const mpz_srcptr s = scalars[i].get_mpz_t();
      std::size_t digit = 0;
      for (std::size_t b = 0; b < window; ++b) {
        if (mpz_tstbit(s, w * window + b)) digit |= std::size_t{1} << b;
      }
      if (digit != 0) arith.add_mixed(buckets[digit], buckets[digit], bases[i].x(), bases[i].y());
    }
    Jacobian running;
    Jacobian sum;
    for (std::size_t d = buckets.size(); d-- > 1;) {
      arith.add_full(running, running, buckets[d]);
      arith.add_full(sum, sum, running);
    }
    arith.add_full(result, result, sum);
  }
  return to_affine(*this, result, p());
}

Bytes Curve::encode(const GroupElement& a) const {
  Bytes out;
  out.reserve(point_bytes());
  if (a.is_identity()) {
    out.assign(point_bytes(), 0);
    return out;
  }
  out.push_back(0x04);
  append(out, encode_fixed(a.x(), coordinate_bytes()));
  append(out, encode_fixed(a.y(), coordinate_bytes()));
  return out;
}

GroupElement Curve::decode(ByteView bytes) const {
  if (bytes.size() != point_bytes()) throw Error(ErrorCode::InvalidEncoding, "point width");
  if (bytes[0] == 0x00) {
    if (std::any_of(bytes.begin() + 1, bytes.end(), [](std::uint8_t b) { return b != 0; })) {
      throw Error(ErrorCode::InvalidEncoding, "non-canonical identity");
    }
    return identity();
  }
  if (bytes[0] != 0x04) throw Error(ErrorCode::InvalidEncoding, "unknown point tag");
  const std::size_t w = coordinate_bytes();
  mpz_class x = decode_unsigned(bytes.subspan(1, w));
  mpz_class y = decode_unsigned(bytes.subspan(1 + w, w));
  return point(std::move(x), std::move(y));
}

}  // namespace zkpol
