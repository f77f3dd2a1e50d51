#include "drinfeld/wieferich_kernel.hpp"

#include <stdexcept>
#include <vector>

#include "drinfeld/residue.hpp"
#include "drinfeld/wieferich.hpp"

namespace drinfeld {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// ---- dense arithmetic over F_q -------------------------------------------

// A/M for monic M of degree n, elements as length-n coefficient arrays.
// Tables are flat row-major n x n blocks.
struct DenseRing {
  const Field* f;
  int n;
  std::vector<Elem> mono;               // row k - n: t^k mod M, n <= k < 2n
  std::vector<std::vector<Elem>> frob;  // frob[i] row j: t^{j q^i} mod M

  DenseRing(const Poly& M, int rank) : f(&M.field()), n(M.degree()) {
    const QuotientRing R(M);
    mono.resize(static_cast<std::size_t>(n) * n);
    for (int k = n; k < 2 * n; ++k) store(R.reduce(Poly::monomial(*f, 1, k)), &mono[(k - n) * n]);
    frob.resize(rank + 1);
    std::vector<Poly> rows;
    for (int j = 0; j < n; ++j) rows.push_back(Poly::monomial(*f, 1, j));
    for (int i = 1; i <= rank; ++i) {
      frob[i].resize(static_cast<std::size_t>(n) * n);
      for (int j = 0; j < n; ++j) {
        rows[j] = R.frobenius(rows[j]);
        store(rows[j], &frob[i][j * n]);
      }
    }
  }

  void store(const Poly& x, Elem* out) const {
    for (int l = 0; l < n; ++l) out[l] = x.coeff(l);
  }
};

// Multiply-accumulate policies: prime fields accumulate integer products and
// reduce once; other fields go through the addition and multiplication tables.
struct PrimeOps {
  using Acc = std::uint32_t;
  unsigned p;
  explicit PrimeOps(const Field& f) : p(f.characteristic()) {}
  void madd(Acc* acc, Elem s, const Elem* row, int n) const {
    for (int l = 0; l < n; ++l) acc[l] += static_cast<Acc>(s) * row[l];
  }
  void add(Acc& acc, Elem x) const { acc += x; }
  Elem fin(Acc a) const { return static_cast<Elem>(a % p); }
};

struct TableOps {
  using Acc = Elem;
  const Field* f;
  explicit TableOps(const Field& f) : f(&f) {}
  void madd(Acc* acc, Elem s, const Elem* row, int n) const {
    const Elem* mr = f->mul_row(s);
    for (int l = 0; l < n; ++l) acc[l] = f->add(acc[l], mr[row[l]]);
  }
  void add(Acc& acc, Elem x) const { acc = f->add(acc, x); }
  Elem fin(Acc a) const { return a; }
};

// y -> phi_t(y) = t y + sum g_i y^{q^i} in A/M
template <class Ops>
class DenseApplier {
 public:
  DenseApplier(const DenseRing& R, const DrinfeldModel& m, const Poly& M)
      : R_(R), ops_(*R.f), g_(m.rank() + 1), acc_(2 * R.n), z_(R.n), zacc_(R.n) {
    top_ = R.n;  // t y reaches degree n
    for (int i = 1; i <= m.rank(); ++i) {
      const Poly r = m.g(i) % M;
      for (int a = 0; a <= r.degree(); ++a)
        if (r.coeff(a)) g_[i].push_back({a, r.coeff(a)});
      if (!r.is_zero()) top_ = std::max(top_, R.n - 1 + r.degree());
    }
  }

  int dim() const { return R_.n; }

  void apply(std::vector<Elem>& y) const {
    const int n = R_.n;
    std::fill(acc_.begin(), acc_.end(), typename Ops::Acc(0));
    for (int l = 0; l < n; ++l) ops_.add(acc_[l + 1], y[l]);
    for (std::size_t i = 1; i < g_.size(); ++i) {
      if (g_[i].empty()) continue;
      std::fill(zacc_.begin(), zacc_.end(), typename Ops::Acc(0));
      const Elem* F = R_.frob[i].data();
      for (int j = 0; j < n; ++j)
        if (y[j]) ops_.madd(zacc_.data(), y[j], F + j * n, n);
      for (int l = 0; l < n; ++l) z_[l] = ops_.fin(zacc_[l]);
      for (const auto& [a, c] : g_[i]) ops_.madd(acc_.data() + a, c, z_.data(), n);
    }
    for (int k = n; k <= top_; ++k) {
      const Elem e = ops_.fin(acc_[k]);
      if (e) ops_.madd(acc_.data(), e, &R_.mono[(k - n) * n], n);
    }
    for (int l = 0; l < n; ++l) y[l] = ops_.fin(acc_[l]);
  }

 private:
  struct Term {
    int deg;
    Elem c;
  };
  const DenseRing& R_;
  Ops ops_;
  std::vector<std::vector<Term>> g_;
  int top_;
  mutable std::vector<typename Ops::Acc> acc_;
  mutable std::vector<Elem> z_;
  mutable std::vector<typename Ops::Acc> zacc_;
};

// ---- packed GF(2) arithmetic ----------------------------------------------

struct BitRing {
  int n;
  u64 mono[128];                 // t^k mod M for n <= k < 2n
  std::vector<std::vector<u64>> table;  // table[i][c * 256 + b]: Frobenius^i of byte b at chunk c
  int chunks;

  BitRing(const Poly& M, int rank) : n(M.degree()) {
    u64 red = 0;  // t^n mod M
    for (int l = 0; l < n; ++l)
      if (M.coeff(l)) red |= u64(1) << l;
    const u64 mask = n == 64 ? ~u64(0) : (u64(1) << n) - 1;
    u64 cur = red;
    for (int k = n; k < 2 * n; ++k) {
      mono[k] = cur;
      const bool top = (cur >> (n - 1)) & 1;
      cur = (cur << 1) & mask;
      if (top) cur ^= red;
    }
    chunks = (n + 7) / 8;
    table.resize(rank + 1);
    std::vector<u64> prev(n), next(n);
    for (int j = 0; j < n; ++j) prev[j] = u64(1) << j;
    for (int i = 1; i <= rank; ++i) {
      // t^{j 2^i} = (t^{j 2^{i-1}})^2
      for (int j = 0; j < n; ++j) next[j] = reduce(square(prev[j]));
      prev.swap(next);
      auto& tb = table[i];
      tb.assign(static_cast<std::size_t>(chunks) * 256, 0);
      for (int c = 0; c < chunks; ++c)
        for (int b = 1; b < 256; ++b) {
          const int bit = __builtin_ctz(b);
          const int j = 8 * c + bit;
          tb[c * 256 + b] = tb[c * 256 + (b & (b - 1))] ^ (j < n ? prev[j] : 0);
        }
    }
  }

  static u128 square(u64 a) {
    u128 r = 0;
    while (a) {
      const int k = __builtin_ctzll(a);
      r |= u128(1) << (2 * k);
      a &= a - 1;
    }
    return r;
  }
  static u128 clmul(u64 a, u64 b) {
    u128 r = 0;
    while (a) {
      r ^= u128(b) << __builtin_ctzll(a);
      a &= a - 1;
    }
    return r;
  }
  u64 reduce(u128 x) const {
    const u64 mask = n == 64 ? ~u64(0) : (u64(1) << n) - 1;
    u64 lo = static_cast<u64>(x) & mask;
    u128 hi = x >> n;
    while (hi) {
      const int k = hi_ctz(hi);
      lo ^= mono[n + k];
      hi &= hi - 1;
    }
    return lo;
  }
  static int hi_ctz(u128 x) {
    const u64 low = static_cast<u64>(x);
    return low ? __builtin_ctzll(low) : 64 + __builtin_ctzll(static_cast<u64>(x >> 64));
  }
  u64 frob(int i, u64 y) const {
    const u64* tb = table[i].data();
    u64 r = 0;
    for (int c = 0; c < chunks; ++c, y >>= 8) r ^= tb[c * 256 + (y & 0xff)];
    return r;
  }
};

u64 bits_mod(const Poly& g, const Poly& M) {
  const Poly r = g % M;
  u64 v = 0;
  for (int l = 0; l <= r.degree(); ++l)
    if (r.coeff(l)) v |= u64(1) << l;
  return v;
}

}  // namespace

struct WieferichKernel::Impl {
  Impl(const Poly& p) : p(p), p2(p * p) {}
  Poly p, p2;
  bool packed = false;
  std::unique_ptr<DenseRing> d1, d2;
  std::unique_ptr<BitRing> b1, b2;
};

WieferichKernel::WieferichKernel(const Place& p, int max_rank)
    : place_(p), max_rank_(max_rank), impl_(std::make_unique<Impl>(p.poly())) {
  if (max_rank < 1) throw std::invalid_argument("WieferichKernel: max_rank must be >= 1");
  impl_->packed = p.field().order() == 2 && 2 * p.degree() <= 64;
  if (impl_->packed) {
    impl_->b1 = std::make_unique<BitRing>(impl_->p, max_rank);
    impl_->b2 = std::make_unique<BitRing>(impl_->p2, max_rank);
  } else {
    impl_->d1 = std::make_unique<DenseRing>(impl_->p, max_rank);
    impl_->d2 = std::make_unique<DenseRing>(impl_->p2, max_rank);
  }
}

WieferichKernel::~WieferichKernel() = default;
WieferichKernel::WieferichKernel(WieferichKernel&&) noexcept = default;
WieferichKernel& WieferichKernel::operator=(WieferichKernel&&) noexcept = default;

namespace {

// Characteristic polynomial of phi_t on A/p as the product of the relation
// polynomials of successive Krylov blocks, each taken modulo the span of the
// previous ones. The echelon basis is kept in insertion order; tags record
// the combination of the current block's Krylov vectors.

Poly packed_charpoly(const Field& f, const BitRing& R, const std::vector<u64>& g, int d) {
  std::vector<u64> basis(d, 0), tags(d, 0);
  std::vector<int> block(d, -1);
  Poly result = Poly::constant(f, 1);
  int filled = 0;
  for (int b = 0; filled < d; ++b) {
    u64 v = 1;
    if (b > 0) {
      int l = 0;
      while (basis[l]) ++l;
      v = u64(1) << l;
    }
    for (int k = 0;; ++k) {
      u64 x = v, tag = u64(1) << k;
      while (x) {
        const int lead = 63 - __builtin_clzll(x);
        if (!basis[lead]) break;
        x ^= basis[lead];
        if (block[lead] == b) tag ^= tags[lead];
      }
      if (!x) {
        std::vector<Elem> c(k + 1);
        for (int l = 0; l <= k; ++l) c[l] = (tag >> l) & 1;
        result = result * Poly(f, std::move(c));
        break;
      }
      const int lead = 63 - __builtin_clzll(x);
      basis[lead] = x;
      tags[lead] = tag;
      block[lead] = b;
      ++filled;
      u128 acc = u128(v) << 1;
      for (std::size_t i = 1; i < g.size(); ++i) acc ^= BitRing::clmul(g[i], R.frob(static_cast<int>(i), v));
      v = R.reduce(acc);
    }
  }
  return result;
}

template <class Ops, class Applier>
Poly dense_charpoly(const Field& f, const Applier& phi, int d) {
  const Ops ops(f);
  using Acc = typename Ops::Acc;
  const int w = d + 1;  // tag width
  // one spare row holds the candidate before it is known to be independent
  std::vector<Elem> rx(static_cast<std::size_t>(d + 1) * d), rt(static_cast<std::size_t>(d + 1) * w);
  std::vector<int> pivot(d), block(d);
  std::vector<char> is_pivot(d, 0);
  std::vector<Acc> xacc(d), tacc(w);
  std::vector<Elem> v(d);
  Poly result = Poly::constant(f, 1);
  int rows = 0;
  for (int b = 0; rows < d; ++b) {
    std::fill(v.begin(), v.end(), 0);
    if (b == 0) {
      v[0] = 1;
    } else {
      int l = 0;
      while (is_pivot[l]) ++l;
      v[l] = 1;
    }
    for (int k = 0;; ++k) {
      for (int l = 0; l < d; ++l) xacc[l] = v[l];
      std::fill(tacc.begin(), tacc.end(), Acc(0));
      tacc[k] = 1;
      for (int r = 0; r < rows; ++r) {
        const Elem s = ops.fin(xacc[pivot[r]]);
        if (!s) continue;
        const Elem ns = f.neg(s);
        ops.madd(xacc.data(), ns, &rx[r * d], d);
        if (block[r] == b) ops.madd(tacc.data(), ns, &rt[r * w], w);
      }
      Elem* x = &rx[rows * d];
      Elem* tag = &rt[rows * w];
      int piv = d;
      for (int l = d - 1; l >= 0; --l) {
        x[l] = ops.fin(xacc[l]);
        if (x[l]) piv = l;
      }
      for (int l = 0; l < w; ++l) tag[l] = ops.fin(tacc[l]);
      if (piv == d) {
        result = result * Poly(f, std::vector<Elem>(tag, tag + k + 1));
        break;
      }
      const Elem* inv = f.mul_row(f.inv(x[piv]));
      for (int l = 0; l < d; ++l) x[l] = inv[x[l]];
      for (int l = 0; l < w; ++l) tag[l] = inv[tag[l]];
      pivot[rows] = piv;
      block[rows] = b;
      is_pivot[piv] = 1;
      ++rows;
      phi.apply(v);
    }
  }
  return result;
}

}  // namespace

Poly WieferichKernel::fitting_ideal(const DrinfeldModel& m) const {
  if (m.rank() > max_rank_) throw std::invalid_argument("WieferichKernel: model rank exceeds max_rank");
  const Field& f = m.field();
  const int d = place_.degree();
  if (impl_->packed) {
    std::vector<u64> g(m.rank() + 1);
    for (int i = 1; i <= m.rank(); ++i) g[i] = bits_mod(m.g(i), impl_->p);
    return packed_charpoly(f, *impl_->b1, g, d);
  }
  if (f.is_prime()) return dense_charpoly<PrimeOps>(f, DenseApplier<PrimeOps>(*impl_->d1, m, impl_->p), d);
  return dense_charpoly<TableOps>(f, DenseApplier<TableOps>(*impl_->d1, m, impl_->p), d);
}

namespace {

// phi_a(1) == 0 in the applier's ring
template <class Applier>
bool horner_kills(const Applier& phi, const Poly& a) {
  const Field& f = a.field();
  const int deg = a.degree();
  std::vector<Elem> y(phi.dim(), 0);
  y[0] = a.coeff(deg);
  for (int k = deg - 1; k >= 0; --k) {
    phi.apply(y);
    y[0] = f.add(y[0], a.coeff(k));
  }
  for (Elem e : y)
    if (e) return false;
  return true;
}

}  // namespace

bool WieferichKernel::kills_one_mod_square(const DrinfeldModel& m, const Poly& a) const {
  if (m.rank() > max_rank_) throw std::invalid_argument("WieferichKernel: model rank exceeds max_rank");
  if (a.is_zero()) return true;
  const int deg = a.degree();
  if (impl_->packed) {
    const BitRing& R = *impl_->b2;
    std::vector<u64> g(m.rank() + 1);
    for (int i = 1; i <= m.rank(); ++i) g[i] = bits_mod(m.g(i), impl_->p2);
    u64 y = a.coeff(deg);
    for (int k = deg - 1; k >= 0; --k) {
      u128 acc = u128(y) << 1;
      for (int i = 1; i <= m.rank(); ++i) acc ^= BitRing::clmul(g[i], R.frob(i, y));
      y = R.reduce(acc) ^ a.coeff(k);
    }
    return y == 0;
  }
  if (m.field().is_prime()) return horner_kills(DenseApplier<PrimeOps>(*impl_->d2, m, impl_->p2), a);
  return horner_kills(DenseApplier<TableOps>(*impl_->d2, m, impl_->p2), a);
}

bool WieferichKernel::is_wieferich(const DrinfeldModel& m) const {
  if (!place_.satisfies_h()) return drinfeld::is_wieferich(m, place_);
  return kills_one_mod_square(m, fitting_ideal(m));
}

}  // namespace drinfeld
