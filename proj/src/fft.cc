// FFTW-backed transforms with a mutex-guarded plan cache.
//
// Plans are created once per (dim, n, direction) with
// FFTW_ESTIMATE | FFTW_UNALIGNED (deterministic planning, safe new-array
// execution on any buffer) and executed concurrently via fftw_execute_dft,
// which is re-entrant for distinct in/out arrays.

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "bnls/field.hpp"

namespace bnls {
namespace {

struct PlanKey {
  int dim, n, sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(dim, n, sign) < std::tie(o.dim, o.n, o.sign);
  }
};

class PlanCache {
 public:
  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    PlanKey key{dim, n, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = 1;
    int dims[3] = {n, n, n};
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
    fftw_complex* buf = fftw_alloc_complex(total);
    if (!buf) throw std::bad_alloc();
    fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw std::runtime_error("fft: planning failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

// parity of the sum of signed frequency indices == parity of the sum of raw
// loop indices (n is even), giving the (-1)^{k1+..+kN} factor as +-1.
inline double mode_parity(const Grid& g, std::size_t flat) {
  int sum = 0;
  if (g.dim == 1) {
    sum = static_cast<int>(flat);
  } else if (g.dim == 2) {
    sum = static_cast<int>(flat / g.n) + static_cast<int>(flat % g.n);
  } else {
    std::size_t r = flat / g.n;
    sum = static_cast<int>(flat % g.n) + static_cast<int>(r % g.n) +
          static_cast<int>(r / g.n);
  }
  return (sum & 1) ? -1.0 : 1.0;
}

}  // namespace

void transform_inplace(Field& u, Rep target) {
  if (u.rep == target) return;
  const Grid& g = u.grid;
  const std::size_t total = g.size();
  if (u.data.size() != total)
    throw std::invalid_argument("transform: data size does not match grid");
  auto* raw = reinterpret_cast<fftw_complex*>(u.data.data());

  if (target == Rep::Fourier) {
    fftw_plan p = cache().get(g.dim, g.n, FFTW_FORWARD);
    fftw_execute_dft(p, raw, raw);
    const double scale = g.cell_volume();
    for (std::size_t i = 0; i < total; ++i)
      u.data[i] *= scale * mode_parity(g, i);
    u.rep = Rep::Fourier;
  } else {
    const double scale = 1.0 / g.box_volume();
    for (std::size_t i = 0; i < total; ++i)
      u.data[i] *= scale * mode_parity(g, i);
    fftw_plan p = cache().get(g.dim, g.n, FFTW_BACKWARD);
    fftw_execute_dft(p, raw, raw);
    u.rep = Rep::Physical;
  }
}

Field transform(const Field& u, Rep target) {
  Field out = u;
  transform_inplace(out, target);
  return out;
}

}  // namespace bnls
