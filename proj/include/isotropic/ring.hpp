#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isotropic/errors.hpp"

namespace iso {

/// Ring element, encoded in mixed radix over the factor moduli.
struct Elem {
  std::uint8_t v = 0;
  friend auto operator<=>(Elem, Elem) = default;
};

/// Z/m_1 × … × Z/m_k with precomputed operation tables (order ≤ 255).
class FiniteRing {
 public:
  FiniteRing() : FiniteRing(std::vector<int>{2}) {}

  explicit FiniteRing(std::vector<int> moduli) {
    auto t = std::make_shared<Tables>();
    t->moduli = std::move(moduli);
    if (t->moduli.empty()) throw ConstructionError("ring needs at least one factor");
    long long order = 1;
    for (int m : t->moduli) {
      if (m < 2) throw ConstructionError("modulus below 2");
      order *= m;
      if (order > 255) throw ConstructionError("ring order above 255 is not supported");
    }
    t->n = static_cast<int>(order);
    const int n = t->n;
    t->add.resize(n * n);
    t->mul.resize(n * n);
    t->neg.resize(n);
    t->inv.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      auto ra = t->decode(a);
      std::vector<int> rn(ra.size());
      for (std::size_t i = 0; i < ra.size(); ++i) rn[i] = (t->moduli[i] - ra[i]) % t->moduli[i];
      t->neg[a] = static_cast<std::uint8_t>(t->encode(rn));
      for (int b = 0; b < n; ++b) {
        auto rb = t->decode(b);
        std::vector<int> s(ra.size()), p(ra.size());
        for (std::size_t i = 0; i < ra.size(); ++i) {
          s[i] = (ra[i] + rb[i]) % t->moduli[i];
          p[i] = (ra[i] * rb[i]) % t->moduli[i];
        }
        t->add[a * n + b] = static_cast<std::uint8_t>(t->encode(s));
        t->mul[a * n + b] = static_cast<std::uint8_t>(t->encode(p));
      }
    }
    std::vector<int> ones(t->moduli.size(), 1);
    t->one = static_cast<std::uint8_t>(t->encode(ones));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (t->mul[a * n + b] == t->one) {
          t->inv[a] = b;
          break;
        }
    tab_ = std::move(t);
  }

  /// Parses "Z4", "Z2xZ3", "F5" (F only for primes).
  static FiniteRing parse(std::string_view spec) {
    std::vector<int> moduli;
    std::size_t pos = 0;
    auto fail = [&] { return ConstructionError("bad ring spec '" + std::string(spec) + "'"); };
    while (pos < spec.size()) {
      const char kind = spec[pos];
      if (kind != 'Z' && kind != 'F') throw fail();
      ++pos;
      std::size_t end = pos;
      while (end < spec.size() && std::isdigit(static_cast<unsigned char>(spec[end]))) ++end;
      if (end == pos) throw fail();
      const int m = std::stoi(std::string(spec.substr(pos, end - pos)));
      if (kind == 'F') {
        if (m < 2) throw fail();
        for (int q = 2; q * q <= m; ++q)
          if (m % q == 0) throw ConstructionError("F" + std::to_string(m) + " is not a prime field");
      }
      moduli.push_back(m);
      pos = end;
      if (pos < spec.size()) {
        if (spec[pos] != 'x') throw fail();
        ++pos;
        if (pos == spec.size()) throw fail();
      }
    }
    if (moduli.empty()) throw fail();
    return FiniteRing(moduli);
  }

  int size() const { return tab_->n; }
  const std::vector<int>& moduli() const { return tab_->moduli; }

  /// Single factor of prime-power order.
  bool is_local() const {
    if (moduli().size() != 1) return false;
    int m = moduli()[0], p = 2;
    while (m % p) ++p;
    while (m % p == 0) m /= p;
    return m == 1;
  }
  /// Every finite commutative ring is semi-local.
  bool is_semilocal() const { return true; }

  std::string spec() const {
    std::string s;
    for (int m : moduli()) s += (s.empty() ? "Z" : "xZ") + std::to_string(m);
    return s;
  }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{tab_->one}; }
  Elem add(Elem a, Elem b) const { return Elem{tab_->add[a.v * tab_->n + b.v]}; }
  Elem mul(Elem a, Elem b) const { return Elem{tab_->mul[a.v * tab_->n + b.v]}; }
  Elem neg(Elem a) const { return Elem{tab_->neg[a.v]}; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  bool is_unit(Elem a) const { return tab_->inv[a.v] >= 0; }
  std::optional<Elem> inv(Elem a) const {
    if (tab_->inv[a.v] < 0) return std::nullopt;
    return Elem{static_cast<std::uint8_t>(tab_->inv[a.v])};
  }
  Elem from_int(long long k) const {
    std::vector<int> r;
    for (int m : moduli()) r.push_back(static_cast<int>(((k % m) + m) % m));
    return Elem{static_cast<std::uint8_t>(tab_->encode(r))};
  }
  std::vector<int> residues(Elem a) const { return tab_->decode(a.v); }
  Elem element(int code) const { return Elem{static_cast<std::uint8_t>(code)}; }

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    for (int a = 0; a < size(); ++a) out.push_back(element(a));
    return out;
  }
  std::vector<Elem> units() const {
    std::vector<Elem> out;
    for (int a = 0; a < size(); ++a)
      if (tab_->inv[a] >= 0) out.push_back(element(a));
    return out;
  }
  /// The unit vector of each factor; these generate (K, +).
  std::vector<Elem> additive_generators() const {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < moduli().size(); ++i) {
      std::vector<int> r(moduli().size(), 0);
      r[i] = 1;
      out.push_back(Elem{static_cast<std::uint8_t>(tab_->encode(r))});
    }
    return out;
  }

  std::string to_string(Elem a) const {
    auto r = residues(a);
    if (r.size() == 1) return std::to_string(r[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + ")";
  }

  friend bool operator==(const FiniteRing& a, const FiniteRing& b) {
    return a.moduli() == b.moduli();
  }

 private:
  struct Tables {
    std::vector<int> moduli;
    int n = 0;
    std::uint8_t one = 0;
    std::vector<std::uint8_t> add, mul, neg;
    std::vector<int> inv;

    int encode(const std::vector<int>& r) const {
      int code = 0, place = 1;
      for (std::size_t i = 0; i < r.size(); ++i) {
        code += r[i] * place;
        place *= moduli[i];
      }
      return code;
    }
    std::vector<int> decode(int code) const {
      std::vector<int> r;
      for (int m : moduli) {
        r.push_back(code % m);
        code /= m;
      }
      return r;
    }
  };
  std::shared_ptr<const Tables> tab_;
};

inline constexpr int kMaxDim = 10;

/// Square matrix over a FiniteRing, n ≤ kMaxDim. Entries outside the n×n
/// corner stay zero so whole-array comparison and hashing are valid.
class RMatrix {
 public:
  RMatrix() = default;
  explicit RMatrix(int n) : n_(static_cast<std::uint8_t>(n)) {
    if (n < 0 || n > kMaxDim) throw UnsupportedError("matrix size above " + std::to_string(kMaxDim));
  }
  static RMatrix identity(int n, const FiniteRing& k) {
    RMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = k.one();
    return m;
  }

  int dim() const { return n_; }
  Elem operator()(int i, int j) const { return a_[i * kMaxDim + j]; }
  Elem& operator()(int i, int j) { return a_[i * kMaxDim + j]; }

  friend bool operator==(const RMatrix& x, const RMatrix& y) {
    return x.n_ == y.n_ && std::memcmp(x.a_.data(), y.a_.data(), sizeof(x.a_)) == 0;
  }
  friend bool operator<(const RMatrix& x, const RMatrix& y) {
    if (x.n_ != y.n_) return x.n_ < y.n_;
    return std::memcmp(x.a_.data(), y.a_.data(), sizeof(x.a_)) < 0;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ULL ^ n_;
    for (int i = 0; i < n_; ++i) {
      std::uint64_t w = 0;
      std::memcpy(&w, &a_[i * kMaxDim], 8);
      h = (h ^ w) * 1099511628211ULL;
      h ^= h >> 29;
      std::uint16_t tail = 0;
      std::memcpy(&tail, &a_[i * kMaxDim + 8], 2);
      h = (h ^ tail) * 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 32));
  }

 private:
  std::uint8_t n_ = 0;
  std::array<Elem, kMaxDim * kMaxDim> a_{};
};

struct RMatrixHash {
  std::size_t operator()(const RMatrix& m) const { return m.hash(); }
};

inline RMatrix mat_mul(const FiniteRing& k, const RMatrix& a, const RMatrix& b) {
  const int n = a.dim();
  RMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const Elem x = a(i, l);
      if (x.v == 0) continue;
      for (int j = 0; j < n; ++j) c(i, j) = k.add(c(i, j), k.mul(x, b(l, j)));
    }
  return c;
}

inline RMatrix mat_add(const FiniteRing& k, const RMatrix& a, const RMatrix& b) {
  RMatrix c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) = k.add(a(i, j), b(i, j));
  return c;
}

inline RMatrix mat_sub(const FiniteRing& k, const RMatrix& a, const RMatrix& b) {
  RMatrix c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) = k.sub(a(i, j), b(i, j));
  return c;
}

inline RMatrix mat_scale(const FiniteRing& k, const RMatrix& a, Elem s) {
  RMatrix c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) = k.mul(s, a(i, j));
  return c;
}

inline RMatrix transpose(const RMatrix& a) {
  RMatrix t(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) t(j, i) = a(i, j);
  return t;
}

inline bool is_zero(const RMatrix& a) { return a == RMatrix(a.dim()); }

/// Determinant by dynamic programming over column subsets (division free).
inline Elem det(const FiniteRing& k, const RMatrix& a) {
  const int n = a.dim();
  if (n == 0) return k.one();
  std::vector<Elem> f(std::size_t{1} << n, k.zero());
  f[0] = k.one();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (f[mask].v == 0) continue;
    const int row = __builtin_popcount(mask);
    if (row >= n) continue;
    for (int c = 0; c < n; ++c) {
      if (mask >> c & 1) continue;
      const Elem x = a(row, c);
      if (x.v == 0) continue;
      Elem term = k.mul(f[mask], x);
      if (__builtin_popcount(mask >> (c + 1)) & 1) term = k.neg(term);
      f[mask | (1u << c)] = k.add(f[mask | (1u << c)], term);
    }
  }
  return f[(1u << n) - 1];
}

inline RMatrix minor_matrix(const RMatrix& a, int r, int c) {
  const int n = a.dim();
  RMatrix m(n - 1);
  for (int i = 0, ii = 0; i < n; ++i) {
    if (i == r) continue;
    for (int j = 0, jj = 0; j < n; ++j) {
      if (j == c) continue;
      m(ii, jj++) = a(i, j);
    }
    ++ii;
  }
  return m;
}

namespace detail {

/// Gauss-Jordan with unit pivots. Fails (nullopt) when some column has no
/// unit pivot, which over a non-local ring can happen for invertible input.
inline std::optional<RMatrix> gauss_inverse(const FiniteRing& k, RMatrix a) {
  const int n = a.dim();
  RMatrix b = RMatrix::identity(n, k);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && !k.is_unit(a(p, c))) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(b(p, j), b(c, j));
      }
    const Elem s = *k.inv(a(c, c));
    for (int j = 0; j < n; ++j) {
      a(c, j) = k.mul(s, a(c, j));
      b(c, j) = k.mul(s, b(c, j));
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || a(i, c).v == 0) continue;
      const Elem f = a(i, c);
      for (int j = 0; j < n; ++j) {
        a(i, j) = k.sub(a(i, j), k.mul(f, a(c, j)));
        b(i, j) = k.sub(b(i, j), k.mul(f, b(c, j)));
      }
    }
  }
  return b;
}

}  // namespace detail

/// Inverse; nullopt when the determinant is not a unit.
inline std::optional<RMatrix> mat_inv(const FiniteRing& k, const RMatrix& a) {
  if (auto g = detail::gauss_inverse(k, a)) return g;
  const int n = a.dim();
  auto dinv = k.inv(det(k, a));
  if (!dinv) return std::nullopt;
  if (n == 1) {
    RMatrix m(1);
    m(0, 0) = *dinv;
    return m;
  }
  RMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem c = det(k, minor_matrix(a, i, j));
      if ((i + j) & 1) c = k.neg(c);
      out(j, i) = k.mul(c, *dinv);
    }
  return out;
}

/// Inverse that throws on a non-unit determinant.
inline RMatrix inverse(const FiniteRing& k, const RMatrix& a) {
  auto m = mat_inv(k, a);
  if (!m) throw PreconditionError("matrix is not invertible");
  return *m;
}

/// a b a^{-1} b^{-1}
inline RMatrix commutator(const FiniteRing& k, const RMatrix& a, const RMatrix& b) {
  return mat_mul(k, mat_mul(k, mat_mul(k, a, b), inverse(k, a)), inverse(k, b));
}

/// g x g^{-1}
inline RMatrix conjugate(const FiniteRing& k, const RMatrix& g, const RMatrix& x) {
  return mat_mul(k, mat_mul(k, g, x), inverse(k, g));
}

inline std::string to_string(const FiniteRing& k, const RMatrix& a) {
  std::string s = "[";
  for (int i = 0; i < a.dim(); ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < a.dim(); ++j) s += (j ? "," : "") + k.to_string(a(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace iso
