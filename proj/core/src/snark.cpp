#include "zkpol/snark.hpp"

#include <sstream>

#include "zkpol/error.hpp"

namespace zkpol {

void ToxicWaste::wipe() {
  for (FieldElement* e : {&s, &rho_l, &rho_r, &alpha_l, &alpha_r, &alpha_o, &beta, &gamma}) {
    *e = FieldElement();
  }
}

std::string_view to_string(CheckFamily family) noexcept {
  switch (family) {
    case CheckFamily::None: return "none";
    case CheckFamily::AlphaRestriction: return "alpha-restriction";
    case CheckFamily::Consistency: return "consistency";
    case CheckFamily::Divisibility: return "divisibility";
  }
  return "unknown";
}

namespace {

ToxicWaste draw_toxic_waste(const QapInstance& qap, const PrimeField& field, Rng& rng) {
  ToxicWaste w;
  for (;;) {
    w.s = field.random_nonzero(rng);
    // t(s) = 0 exactly when s is one of the evaluation points 1..d.
    if (w.s.value() > static_cast<unsigned long>(qap.num_constraints())) break;
  }
  w.rho_l = field.random_nonzero(rng);
  w.rho_r = field.random_nonzero(rng);
  w.alpha_l = field.random_nonzero(rng);
  w.alpha_r = field.random_nonzero(rng);
  w.alpha_o = field.random_nonzero(rng);
  w.beta = field.random_nonzero(rng);
  w.gamma = field.random_nonzero(rng);
  return w;
}

CrsPair generate(const QapInstance& qap, const PairingEngine& engine, const ToxicWaste& w) {
  const PrimeField& field = engine.scalar_field();
  if (!field.same_as(qap.field())) {
    throw Error(ErrorCode::InvalidParameters, "QAP field differs from the pairing scalar field");
  }
  const auto ev = qap.evaluate_at(w.s);
  const FieldElement rho_o = w.rho_l * w.rho_r;
  const std::size_t d = qap.num_constraints();
  const std::size_t m = qap.num_public();
  const std::size_t n1 = qap.num_variables();
  auto exp = [&](const FieldElement& k) { return engine.group_exp(k); };

  CrsPair crs;
  ProvingKey& pk = crs.proving;
  VerificationKey& vk = crs.verification;
  pk.circuit_id = qap.circuit_id();
  vk.circuit_id = qap.circuit_id();
  pk.g = engine.generator();
  vk.g = engine.generator();

  pk.powers.reserve(d);
  FieldElement power = w.s;
  for (std::size_t i = 1; i <= d; ++i) {
    pk.powers.push_back(exp(power));
    power *= w.s;
  }

  for (std::size_t j = m + 1; j < n1; ++j) {
    const FieldElement l = w.rho_l * ev.left[j];
    const FieldElement r = w.rho_r * ev.right[j];
    const FieldElement o = rho_o * ev.output[j];
    pk.left.push_back(exp(l));
    pk.right.push_back(exp(r));
    pk.output.push_back(exp(o));
    pk.left_alpha.push_back(exp(w.alpha_l * l));
    pk.right_alpha.push_back(exp(w.alpha_r * r));
    pk.output_alpha.push_back(exp(w.alpha_o * o));
    pk.beta.push_back(exp(w.beta * (l + r + o)));
  }

  vk.output_target = exp(rho_o * ev.target);
  for (std::size_t i = 0; i <= m; ++i) {
    vk.left.push_back(exp(w.rho_l * ev.left[i]));
    vk.right.push_back(exp(w.rho_r * ev.right[i]));
    vk.output.push_back(exp(rho_o * ev.output[i]));
  }
  vk.alpha_l = exp(w.alpha_l);
  vk.alpha_r = exp(w.alpha_r);
  vk.alpha_o = exp(w.alpha_o);
  vk.gamma = exp(w.gamma);
  vk.beta_gamma = exp(w.beta * w.gamma);
  return crs;
}

}  // namespace

CrsPair setup(const QapInstance& qap, const PairingEngine& engine, Rng& rng) {
  ToxicWaste waste = draw_toxic_waste(qap, engine.scalar_field(), rng);
  CrsPair crs = generate(qap, engine, waste);
  waste.wipe();
  return crs;
}

CrsPair setup_exposing_toxic_waste(const QapInstance& qap, const PairingEngine& engine, Rng& rng,
                                   ToxicWaste& waste) {
  waste = draw_toxic_waste(qap, engine.scalar_field(), rng);
  return generate(qap, engine, waste);
}

Proof prove(const ProvingKey& pk, const QapInstance& qap, const Witness& witness,
            const PairingEngine& engine) {
  const std::size_t private_count = qap.num_variables() - 1 - qap.num_public();
  if (pk.circuit_id != qap.circuit_id() || pk.left.size() != private_count ||
      pk.powers.size() != qap.num_constraints()) {
    throw Error(ErrorCode::KeyMismatch, "proving key was generated for a different circuit");
  }
  const AssembledPolynomials polys = assemble(qap, witness);
  const auto priv = witness.private_values();

  Proof proof;
  proof.left = engine.multi_exp(pk.left, priv);
  proof.right = engine.multi_exp(pk.right, priv);
  proof.output = engine.multi_exp(pk.output, priv);
  proof.left_alpha = engine.multi_exp(pk.left_alpha, priv);
  proof.right_alpha = engine.multi_exp(pk.right_alpha, priv);
  proof.output_alpha = engine.multi_exp(pk.output_alpha, priv);
  proof.consistency = engine.multi_exp(pk.beta, priv);

  // h(s) in the exponent: g^(h_0) * prod_k (g^(s^k))^(h_k).
  const auto& h = polys.quotient.coefficients();
  std::vector<GroupElement> bases;
  bases.reserve(h.size());
  bases.push_back(pk.g);
  for (std::size_t k = 1; k < h.size(); ++k) bases.push_back(pk.powers[k - 1]);
  proof.quotient = h.empty() ? engine.curve().identity()
                             : engine.multi_exp(std::span(bases).first(h.size()), h);
  return proof;
}

VerifyResult verify(const VerificationKey& vk, std::span<const FieldElement> public_inputs,
                    const Proof& proof, const PairingEngine& engine) {
  if (public_inputs.size() != vk.num_public()) {
    throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(vk.num_public()) +
                                              " public inputs, got " +
                                              std::to_string(public_inputs.size()));
  }
  const Curve& curve = engine.curve();
  for (const GroupElement* e : proof.elements()) {
    if (!e->is_bound() || &e->curve() != &curve || !curve.in_subgroup(*e)) {
      throw Error(ErrorCode::MalformedProof, "proof element outside the prime-order subgroup");
    }
  }

  auto combine = [&](const std::vector<GroupElement>& terms) {
    return terms[0] + engine.multi_exp(std::span(terms).subspan(1), public_inputs);
  };
  const GroupElement left_v = combine(vk.left);
  const GroupElement right_v = combine(vk.right);
  const GroupElement output_v = combine(vk.output);
  auto e = [&](const GroupElement& a, const GroupElement& b) { return engine.pairing(a, b); };

  if (e(proof.left, vk.alpha_l) != e(proof.left_alpha, vk.g) ||
      e(proof.right, vk.alpha_r) != e(proof.right_alpha, vk.g) ||
      e(proof.output, vk.alpha_o) != e(proof.output_alpha, vk.g)) {
    return {false, CheckFamily::AlphaRestriction};
  }
  if (e(proof.left + proof.right + proof.output, vk.beta_gamma) != e(proof.consistency, vk.gamma)) {
    return {false, CheckFamily::Consistency};
  }
  if (e(left_v + proof.left, right_v + proof.right) !=
      e(vk.output_target, proof.quotient) * e(output_v + proof.output, vk.g)) {
    return {false, CheckFamily::Divisibility};
  }
  return {true, CheckFamily::None};
}

namespace {

constexpr std::string_view kCrsMagic = "ZKPOLCRS";
constexpr std::string_view kProofMagic = "ZKPOLPRF";

void write_header(Bytes& out, std::string_view magic, const Digest32& id) {
  append(out, as_bytes(magic));
  append_u8(out, kFormatVersion);
  append(out, id);
}

void write_sequence(Bytes& out, const std::vector<GroupElement>& seq, const Curve& curve) {
  append_u32(out, static_cast<std::uint32_t>(seq.size()));
  for (const auto& e : seq) append(out, curve.encode(e));
}

struct Framed {
  std::string magic;
  Digest32 id{};
  std::vector<std::vector<GroupElement>> sequences;
};

Framed read_framed(ByteView bytes, const Curve& curve) {
  ByteReader in(bytes);
  Framed f;
  ByteView magic = in.take(8);
  f.magic.assign(magic.begin(), magic.end());
  if (f.magic != kCrsMagic && f.magic != kProofMagic) {
    throw Error(ErrorCode::InvalidEncoding, "unknown file magic");
  }
  if (in.u8() != kFormatVersion) throw Error(ErrorCode::InvalidEncoding, "unsupported version");
  ByteView id = in.take(32);
  std::copy(id.begin(), id.end(), f.id.begin());
  while (in.remaining() > 0) {
    const std::uint32_t count = in.u32();
    if (count > in.remaining() / curve.point_bytes()) {
      throw Error(ErrorCode::InvalidEncoding, "sequence longer than the file");
    }
    std::vector<GroupElement> seq;
    seq.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) seq.push_back(curve.decode(in.take(curve.point_bytes())));
    f.sequences.push_back(std::move(seq));
  }
  return f;
}

void expect_size(const std::vector<GroupElement>& seq, std::size_t n, const char* what) {
  if (seq.size() != n) throw Error(ErrorCode::InvalidEncoding, std::string("bad length for ") + what);
}

}  // namespace

Bytes serialize(const ProvingKey& pk, const Curve& curve) {
  Bytes out;
  write_header(out, kCrsMagic, pk.circuit_id);
  write_sequence(out, {pk.g}, curve);
  for (const auto* seq : {&pk.powers, &pk.left, &pk.right, &pk.output, &pk.left_alpha,
                          &pk.right_alpha, &pk.output_alpha, &pk.beta}) {
    write_sequence(out, *seq, curve);
  }
  return out;
}

Bytes serialize(const VerificationKey& vk, const Curve& curve) {
  Bytes out;
  write_header(out, kCrsMagic, vk.circuit_id);
  write_sequence(out, {vk.g, vk.output_target}, curve);
  write_sequence(out, vk.left, curve);
  write_sequence(out, vk.right, curve);
  write_sequence(out, vk.output, curve);
  write_sequence(out, {vk.alpha_l, vk.alpha_r, vk.alpha_o, vk.gamma, vk.beta_gamma}, curve);
  return out;
}

Bytes serialize(const Proof& proof, const Digest32& circuit_id, const Curve& curve) {
  Bytes out;
  write_header(out, kProofMagic, circuit_id);
  std::vector<GroupElement> seq;
  for (const GroupElement* e : proof.elements()) seq.push_back(*e);
  write_sequence(out, seq, curve);
  return out;
}

ProvingKey deserialize_proving_key(ByteView bytes, const Curve& curve) {
  Framed f = read_framed(bytes, curve);
  if (f.magic != kCrsMagic || f.sequences.size() != 9) {
    throw Error(ErrorCode::InvalidEncoding, "not a proving key file");
  }
  ProvingKey pk;
  pk.circuit_id = f.id;
  expect_size(f.sequences[0], 1, "generator");
  pk.g = f.sequences[0][0];
  pk.powers = std::move(f.sequences[1]);
  pk.left = std::move(f.sequences[2]);
  pk.right = std::move(f.sequences[3]);
  pk.output = std::move(f.sequences[4]);
  pk.left_alpha = std::move(f.sequences[5]);
  pk.right_alpha = std::move(f.sequences[6]);
  pk.output_alpha = std::move(f.sequences[7]);
  pk.beta = std::move(f.sequences[8]);
  const std::size_t n = pk.left.size();
  for (const auto* seq : {&pk.right, &pk.output, &pk.left_alpha, &pk.right_alpha,
                          &pk.output_alpha, &pk.beta}) {
    expect_size(*seq, n, "variable sequence");
  }
  return pk;
}

VerificationKey deserialize_verification_key(ByteView bytes, const Curve& curve) {
  Framed f = read_framed(bytes, curve);
  if (f.magic != kCrsMagic || f.sequences.size() != 5) {
    throw Error(ErrorCode::InvalidEncoding, "not a verification key file");
  }
  VerificationKey vk;
  vk.circuit_id = f.id;
  expect_size(f.sequences[0], 2, "generator block");
  vk.g = f.sequences[0][0];
  vk.output_target = f.sequences[0][1];
  vk.left = std::move(f.sequences[1]);
  vk.right = std::move(f.sequences[2]);
  vk.output = std::move(f.sequences[3]);
  if (vk.left.empty()) throw Error(ErrorCode::InvalidEncoding, "empty public sequence");
  expect_size(vk.right, vk.left.size(), "right");
  expect_size(vk.output, vk.left.size(), "output");
  expect_size(f.sequences[4], 5, "alpha/gamma block");
  vk.alpha_l = f.sequences[4][0];
  vk.alpha_r = f.sequences[4][1];
  vk.alpha_o = f.sequences[4][2];
  vk.gamma = f.sequences[4][3];
  vk.beta_gamma = f.sequences[4][4];
  return vk;
}

Proof deserialize_proof(ByteView bytes, const Curve& curve, Digest32* circuit_id) {
  try {
    Framed f = read_framed(bytes, curve);
    if (f.magic != kProofMagic || f.sequences.size() != 1 ||
        f.sequences[0].size() != Proof::kElements) {
      throw Error(ErrorCode::InvalidEncoding, "not a proof file");
    }
    Proof proof;
    auto slots = proof.elements();
    for (std::size_t i = 0; i < Proof::kElements; ++i) *slots[i] = f.sequences[0][i];
    if (circuit_id != nullptr) *circuit_id = f.id;
    return proof;
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedProof, e.what());
  }
}

Bytes encode_proof_elements(const Proof& proof) {
  Bytes out;
  for (const GroupElement* e : proof.elements()) append(out, e->encode());
  return out;
}

Proof decode_proof_elements(ByteView bytes, const Curve& curve) {
  const std::size_t w = curve.point_bytes();
  if (bytes.size() != w * Proof::kElements) {
    throw Error(ErrorCode::MalformedProof, "proof body has the wrong size");
  }
  Proof proof;
  auto slots = proof.elements();
  try {
    for (std::size_t i = 0; i < Proof::kElements; ++i) *slots[i] = curve.decode(bytes.subspan(i * w, w));
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedProof, e.what());
  }
  return proof;
}

std::string hex_dump(ByteView framed, const Curve& curve) {
  Framed f = read_framed(framed, curve);
  std::ostringstream out;
  out << "magic " << f.magic << "\nversion " << int(kFormatVersion) << "\ncircuit "
      << to_hex(f.id) << '\n';
  for (std::size_t s = 0; s < f.sequences.size(); ++s) {
    out << "sequence " << s << " count " << f.sequences[s].size() << '\n';
    for (std::size_t i = 0; i < f.sequences[s].size(); ++i) {
      out << "  [" << i << "] " << to_hex(curve.encode(f.sequences[s][i])) << '\n';
    }
  }
  return out.str();
}

}  // namespace zkpol
