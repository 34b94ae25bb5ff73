#include "strobo/clifford.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace strobo {

namespace {

constexpr SqPauli kX{true, false, 0};
constexpr SqPauli kZ{false, true, 0};
constexpr SqPauli kY{true, true, 1};  // Y = i XZ

SqPauli negate(SqPauli p) {
  p.phase = static_cast<uint8_t>((p.phase + 2) & 3);
  return p;
}

struct GateImages {
  SqPauli x, z;
};

GateImages gate_images(const std::string& g) {
  if (g == "I") return {kX, kZ};
  if (g == "X") return {kX, negate(kZ)};
  if (g == "Y") return {negate(kX), negate(kZ)};
  if (g == "Z") return {negate(kX), kZ};
  if (g == "W") return {kZ, kX};          // WXW = Z, WZW = X
  if (g == "S") return {kY, kZ};          // SXS^dag = Y
  if (g == "Sd") return {negate(kY), kZ};  // S^dag X S = -Y
  throw std::invalid_argument("unknown gate: " + g);
}

}  // namespace

CliffordLayer::CliffordLayer(size_t n) : image_x_(n, kX), image_z_(n, kZ) {}

SqPauli CliffordLayer::conj_single(size_t q, const SqPauli& p) const {
  SqPauli r{false, false, p.phase};
  if (p.x) r = multiply(r, image_x_[q]);
  if (p.z) r = multiply(r, image_z_[q]);
  return r;
}

CliffordLayer& CliffordLayer::apply_gate(size_t qubit, const std::string& gate) {
  if (qubit >= num_qubits()) throw std::out_of_range("qubit out of range");
  GateImages g = gate_images(gate);
  // New layer = gate . existing: conjugate the existing images by the gate.
  auto conj_by_gate = [&](const SqPauli& p) {
    SqPauli r{false, false, p.phase};
    if (p.x) r = multiply(r, g.x);
    if (p.z) r = multiply(r, g.z);
    return r;
  };
  image_x_[qubit] = conj_by_gate(image_x_[qubit]);
  image_z_[qubit] = conj_by_gate(image_z_[qubit]);
  return *this;
}

CliffordLayer CliffordLayer::parse(size_t n, const std::string& spec) {
  CliffordLayer layer(n);
  size_t i = 0;
  while (i < spec.size()) {
    char c = spec[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '*') {
      i++;
      continue;
    }
    size_t start = i;
    while (i < spec.size() && std::isalpha(static_cast<unsigned char>(spec[i]))) i++;
    std::string gate = spec.substr(start, i - start);
    size_t dstart = i;
    while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) i++;
    if (dstart == i) throw std::invalid_argument("missing qubit index in: " + spec);
    size_t q = std::stoul(spec.substr(dstart, i - dstart));
    if (q == 0 || q > n) throw std::out_of_range("qubit index out of range in: " + spec);
    layer.apply_gate(q - 1, gate);
  }
  return layer;
}

CliffordLayer CliffordLayer::from_pauli(const PhasedPauli& p) {
  CliffordLayer layer(p.num_qubits());
  for (size_t q = 0; q < p.num_qubits(); q++) {
    bool x = p.x_bit(q), z = p.z_bit(q);
    if (x && z)
      layer.apply_gate(q, "Y");
    else if (x)
      layer.apply_gate(q, "X");
    else if (z)
      layer.apply_gate(q, "Z");
  }
  return layer;
}

CliffordLayer operator*(const CliffordLayer& a, const CliffordLayer& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("layer size mismatch");
  CliffordLayer r(a.num_qubits());
  for (size_t q = 0; q < a.num_qubits(); q++) {
    r.image_x_[q] = a.conj_single(q, b.image_x_[q]);
    r.image_z_[q] = a.conj_single(q, b.image_z_[q]);
  }
  return r;
}

CliffordLayer CliffordLayer::inverse() const {
  CliffordLayer r(num_qubits());
  for (size_t q = 0; q < num_qubits(); q++) {
    // Search the six Hermitian axis images for the preimages of X and Z.
    const SqPauli axes[3] = {kX, kY, kZ};
    bool fx = false, fz = false;
    for (const SqPauli& ax : axes) {
      for (int s = 0; s < 2; s++) {
        SqPauli cand = s ? negate(ax) : ax;
        SqPauli img = conj_single(q, cand);
        if (img == kX) {
          r.image_x_[q] = cand;
          fx = true;
        }
        if (img == kZ) {
          r.image_z_[q] = cand;
          fz = true;
        }
      }
    }
    if (!fx || !fz) throw std::logic_error("clifford inverse not found");
  }
  return r;
}

PhasedPauli CliffordLayer::conjugate(const PhasedPauli& p) const {
  if (p.num_qubits() != num_qubits()) throw std::invalid_argument("qubit count mismatch");
  PhasedPauli r(p.num_qubits());
  unsigned phase = p.phase_exponent();
  for (size_t q = 0; q < p.num_qubits(); q++) {
    bool x = p.x_bit(q), z = p.z_bit(q);
    if (!x && !z) continue;
    SqPauli img = conj_single(q, SqPauli{x, z, 0});
    r.set_x(q, img.x);
    r.set_z(q, img.z);
    phase += img.phase;
  }
  r.set_phase_exponent(static_cast<uint8_t>(phase & 3));
  return r;
}

bool CliffordLayer::is_identity() const {
  for (size_t q = 0; q < num_qubits(); q++)
    if (!(image_x_[q] == kX) || !(image_z_[q] == kZ)) return false;
  return true;
}

bool CliffordLayer::operator==(const CliffordLayer& o) const {
  return image_x_ == o.image_x_ && image_z_ == o.image_z_;
}

std::string CliffordLayer::str() const {
  std::ostringstream os;
  bool any = false;
  for (size_t q = 0; q < num_qubits(); q++) {
    if (image_x_[q] == kX && image_z_[q] == kZ) continue;
    if (any) os << ' ';
    // Identify by action signature.
    auto sig = [&](const SqPauli& p) {
      char axis = p.x && p.z ? 'Y' : (p.x ? 'X' : 'Z');
      // Display sign of the image.
      uint8_t disp = static_cast<uint8_t>((p.phase + 4 - ((p.x && p.z) ? 1 : 0)) & 3);
      return std::string(disp == 2 ? "-" : "") + axis;
    };
    os << "q" << (q + 1) << ":X->" << sig(image_x_[q]) << ",Z->" << sig(image_z_[q]);
    any = true;
  }
  if (!any) return "I";
  return os.str();
}

}  // namespace strobo
