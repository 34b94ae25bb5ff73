#include "strobo/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace strobo {

void PhasedPauli::set_x(size_t q, bool v) {
  if (v)
    x_[q >> 6] |= uint64_t{1} << (q & 63);
  else
    x_[q >> 6] &= ~(uint64_t{1} << (q & 63));
}

void PhasedPauli::set_z(size_t q, bool v) {
  if (v)
    z_[q >> 6] |= uint64_t{1} << (q & 63);
  else
    z_[q >> 6] &= ~(uint64_t{1} << (q & 63));
}

PhasedPauli PhasedPauli::single(size_t n, size_t qubit, char axis) {
  PhasedPauli p(n);
  if (qubit >= n) throw std::out_of_range("qubit index out of range");
  switch (axis) {
    case 'X':
      p.set_x(qubit, true);
      break;
    case 'Z':
      p.set_z(qubit, true);
      break;
    case 'Y':
      p.set_x(qubit, true);
      p.set_z(qubit, true);
      p.phase_ = 1;  // Y = i XZ
      break;
    default:
      throw std::invalid_argument("axis must be X, Y or Z");
  }
  return p;
}

PhasedPauli PhasedPauli::parse(size_t n, const std::string& text) {
  PhasedPauli p(n);
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
  uint8_t display = 0;
  if (i < text.size() && text[i] == '+') i++;
  if (i < text.size() && text[i] == '-') {
    display = 2;
    i++;
  }
  if (i < text.size() && text[i] == 'i') {
    display = (display + 1) & 3;
    i++;
  }
  size_t y_count = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '*') {
      i++;
      continue;
    }
    if (c == 'I') {
      i++;
      // optional index after I
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) i++;
      continue;
    }
    if (c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument("bad Pauli string: " + text);
    i++;
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) i++;
    if (start == i) throw std::invalid_argument("missing qubit index in: " + text);
    size_t q = std::stoul(text.substr(start, i - start));
    if (q == 0 || q > n) throw std::out_of_range("qubit index out of range in: " + text);
    q -= 1;  // 1-indexed externally
    if (p.x_bit(q) || p.z_bit(q))
      throw std::invalid_argument("repeated qubit in: " + text);
    if (c == 'X' || c == 'Y') p.set_x(q, true);
    if (c == 'Z' || c == 'Y') p.set_z(q, true);
    if (c == 'Y') y_count++;
  }
  p.phase_ = static_cast<uint8_t>((display + y_count) & 3);
  return p;
}

bool PhasedPauli::is_identity_bits() const {
  for (size_t w = 0; w < x_.size(); w++)
    if (x_[w] | z_[w]) return false;
  return true;
}

size_t PhasedPauli::weight() const {
  size_t s = 0;
  for (size_t w = 0; w < x_.size(); w++) s += std::popcount(x_[w] | z_[w]);
  return s;
}

size_t PhasedPauli::count_y_sites() const {
  size_t s = 0;
  for (size_t w = 0; w < x_.size(); w++) s += std::popcount(x_[w] & z_[w]);
  return s;
}

uint8_t PhasedPauli::display_phase_exponent() const {
  return static_cast<uint8_t>((phase_ + 4 - (count_y_sites() & 3)) & 3);
}

PhasedPauli PhasedPauli::adjoint() const {
  // (i^p W)^dag = i^{-p} W^dag; W = prod X^x Z^z has W^dag = (-1)^{#Y} W.
  PhasedPauli r = *this;
  r.phase_ = static_cast<uint8_t>((4 - phase_ + 2 * (count_y_sites() & 1)) & 3);
  return r;
}

std::vector<size_t> PhasedPauli::support() const {
  std::vector<size_t> s;
  for (size_t q = 0; q < n_; q++)
    if (x_bit(q) || z_bit(q)) s.push_back(q);
  return s;
}

std::string PhasedPauli::str() const {
  static const char* prefix[4] = {"", "i", "-", "-i"};
  std::ostringstream os;
  os << prefix[display_phase_exponent()];
  bool any = false;
  for (size_t q = 0; q < n_; q++) {
    bool x = x_bit(q), z = z_bit(q);
    if (!x && !z) continue;
    if (any) os << ' ';
    os << (x && z ? 'Y' : (x ? 'X' : 'Z')) << (q + 1);
    any = true;
  }
  if (!any) os << 'I';
  return os.str();
}

PhasedPauli multiply(const PhasedPauli& p, const PhasedPauli& q) {
  if (p.n_ != q.n_) throw std::invalid_argument("qubit count mismatch");
  PhasedPauli r(p.n_);
  size_t cross = 0;  // popcount(p.z & q.x): Z^a X^b reordering signs
  for (size_t w = 0; w < p.x_.size(); w++) {
    cross += std::popcount(p.z_[w] & q.x_[w]);
    r.x_[w] = p.x_[w] ^ q.x_[w];
    r.z_[w] = p.z_[w] ^ q.z_[w];
  }
  r.phase_ = static_cast<uint8_t>((p.phase_ + q.phase_ + 2 * (cross & 1)) & 3);
  return r;
}

bool commutes(const PhasedPauli& p, const PhasedPauli& q) {
  if (p.num_qubits() != q.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  size_t s = 0;
  const auto& px = p.x_words();
  const auto& pz = p.z_words();
  const auto& qx = q.x_words();
  const auto& qz = q.z_words();
  for (size_t w = 0; w < px.size(); w++)
    s += std::popcount(px[w] & qz[w]) + std::popcount(pz[w] & qx[w]);
  return (s & 1) == 0;
}

namespace {

// Symplectic row vectors over GF(2): bits [0,n) hold x, [n,2n) hold z,
// packed contiguously.
struct BitMatrix {
  size_t cols;
  std::vector<std::vector<uint64_t>> rows;

  static void set_bit(std::vector<uint64_t>& row, size_t c) {
    row[c >> 6] |= uint64_t{1} << (c & 63);
  }

  static std::vector<uint64_t> pack(const PhasedPauli& p) {
    size_t n = p.num_qubits();
    std::vector<uint64_t> row((2 * n + 63) / 64, 0);
    for (size_t q = 0; q < n; q++) {
      if (p.x_bit(q)) set_bit(row, q);
      if (p.z_bit(q)) set_bit(row, n + q);
    }
    return row;
  }

  // Row-reduces in place; returns rank. Records pivot columns.
  size_t reduce(std::vector<size_t>* pivots = nullptr) {
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows.size(); c++) {
      size_t w = c >> 6, b = c & 63;
      size_t sel = rows.size();
      for (size_t r = rank; r < rows.size(); r++)
        if ((rows[r][w] >> b) & 1) {
          sel = r;
          break;
        }
      if (sel == rows.size()) continue;
      std::swap(rows[rank], rows[sel]);
      for (size_t r = 0; r < rows.size(); r++) {
        if (r != rank && ((rows[r][w] >> b) & 1))
          for (size_t k = 0; k < rows[r].size(); k++) rows[r][k] ^= rows[rank][k];
      }
      if (pivots) pivots->push_back(c);
      rank++;
    }
    return rank;
  }
};

}  // namespace

size_t symplectic_rank(const std::vector<PhasedPauli>& generators) {
  if (generators.empty()) return 0;
  BitMatrix m;
  m.cols = 2 * generators[0].num_qubits();
  for (const auto& g : generators) m.rows.push_back(BitMatrix::pack(g));
  return m.reduce();
}

bool span_contains(const std::vector<PhasedPauli>& generators, const PhasedPauli& p) {
  size_t base = symplectic_rank(generators);
  std::vector<PhasedPauli> with(generators);
  with.push_back(p);
  return symplectic_rank(with) == base;
}

std::vector<PhasedPauli> normalizer(size_t n, const std::vector<PhasedPauli>& generators,
                                    size_t cap) {
  // Solve <x_g, z_p> + <z_g, x_p> = 0 for all generators g: a linear system
  // on the 2n bits (x_p | z_p). The constraint row for g is [z_g | x_g].
  size_t cols = 2 * n;
  BitMatrix sys;
  sys.cols = cols;
  for (const auto& g : generators) {
    if (g.num_qubits() != n) throw std::invalid_argument("generator qubit count mismatch");
    std::vector<uint64_t> row(g.z_words());
    row.insert(row.end(), g.x_words().begin(), g.x_words().end());
    sys.rows.push_back(row);
  }
  std::vector<size_t> pivots;
  size_t rank = sys.reduce(&pivots);

  size_t free_dim = cols - rank;
  if (free_dim >= 63 || (size_t{1} << free_dim) > cap)
    throw std::length_error("normalizer enumeration exceeds cap");

  // Nullspace basis: one vector per free column.
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<uint64_t>> basis;
  size_t words = (cols + 63) / 64;
  for (size_t c = 0; c < cols; c++) {
    if (is_pivot[c]) continue;
    std::vector<uint64_t> v(words, 0);
    v[c >> 6] |= uint64_t{1} << (c & 63);
    for (size_t r = 0; r < rank; r++) {
      if ((sys.rows[r][c >> 6] >> (c & 63)) & 1) {
        size_t pc = pivots[r];
        v[pc >> 6] |= uint64_t{1} << (pc & 63);
      }
    }
    basis.push_back(std::move(v));
  }

  size_t count = size_t{1} << free_dim;
  std::vector<PhasedPauli> out;
  out.reserve(count);
  size_t xw = (n + 63) / 64;
  for (size_t mask = 0; mask < count; mask++) {
    std::vector<uint64_t> v(words, 0);
    for (size_t b = 0; b < free_dim; b++)
      if ((mask >> b) & 1)
        for (size_t k = 0; k < words; k++) v[k] ^= basis[b][k];
    PhasedPauli p(n);
    for (size_t q = 0; q < n; q++) {
      bool xb = (v[q >> 6] >> (q & 63)) & 1;
      size_t zc = n + q;
      bool zb = (v[zc >> 6] >> (zc & 63)) & 1;
      p.set_x(q, xb);
      p.set_z(q, zb);
    }
    (void)xw;
    out.push_back(std::move(p));
  }
  // Deterministic order: lexicographic on (z, x) words.
  std::sort(out.begin(), out.end(), [](const PhasedPauli& a, const PhasedPauli& b) {
    if (a.z_words() != b.z_words()) return a.z_words() < b.z_words();
    return a.x_words() < b.x_words();
  });
  return out;
}

}  // namespace strobo
