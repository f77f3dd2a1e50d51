#pragma once

#include <stdexcept>
#include <vector>

namespace drinfeld {

// det(x - A) over any commutative ring (division-free Berkowitz); returns the
// coefficients low to high, the last one being `one`.
template <class R>
std::vector<R> berkowitz(const std::vector<std::vector<R>>& A, const R& zero, const R& one) {
  const std::size_t n = A.size();
  if (n == 0) throw std::invalid_argument("charpoly of an empty matrix");
  // vect holds coefficients highest degree first
  std::vector<R> vect{one, zero - A[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    // q_0 = 1, q_1 = -a_rr, q_{k+1} = -R A^{k-1} C
    std::vector<R> qs{one, zero - A[r][r]};
    std::vector<R> col(r, zero);
    for (std::size_t i = 0; i < r; ++i) col[i] = A[i][r];
    for (std::size_t k = 1; k <= r; ++k) {
      R s = zero;
      for (std::size_t i = 0; i < r; ++i) s = s + A[r][i] * col[i];
      qs.push_back(zero - s);
      if (k == r) break;
      std::vector<R> next(r, zero);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + A[i][j] * col[j];
      col = std::move(next);
    }
    std::vector<R> nv(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) nv[i] = nv[i] + qs[i - j] * vect[j];
    vect = std::move(nv);
  }
  return {vect.rbegin(), vect.rend()};
}

}  // namespace drinfeld
