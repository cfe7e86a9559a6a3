#include "uwell/fast_operator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "uwell/error.hpp"
#include "uwell/kernels.hpp"

namespace uwell {
namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
struct FftwBuffer {
  T* data = nullptr;
  FftwBuffer() = default;
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(FftwBuffer&& o) noexcept : data(std::exchange(o.data, nullptr)) {}
  FftwBuffer& operator=(FftwBuffer&& o) noexcept {
    std::swap(data, o.data);
    return *this;
  }
};

struct Plan {
  fftw_plan p = nullptr;
  Plan() = default;
  explicit Plan(fftw_plan q) : p(q) {
    if (!p) throw Error("FFTW could not create a plan");
  }
  ~Plan() {
    if (p) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(p);
    }
  }
  Plan(Plan&& o) noexcept : p(std::exchange(o.p, nullptr)) {}
  Plan& operator=(Plan&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
};

}  // namespace

std::size_t fft_friendly_size(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t r = m;
    for (std::size_t f : {2, 3, 5, 7}) {
      while (r % f == 0) r /= f;
    }
    if (r == 1) return m;
  }
}

struct KernelOperator::Impl {
  RadialGrid grid;
  Sector sector;
  int l = 0;
  std::size_t n = 0;
  std::size_t len = 0;   // FFT length
  std::size_t half = 0;  // len / 2 + 1

  std::vector<double> diag;
  std::vector<double> rho;  // index-unit node positions j + 1/2

  // Kernel spectra, already divided by len.
  std::vector<cplx> line;
  std::vector<cplx> kt, kh, lt, lh;

  FftwBuffer<double> real;
  std::vector<FftwBuffer<fftw_complex>> inputs;
  FftwBuffer<fftw_complex> acc;
  Plan forward;
  Plan inverse;

  // stable rows
  std::size_t split = 0;
  std::vector<std::size_t> near_end;     // J_i
  std::vector<std::size_t> near_offset;  // start of row i in near_w
  std::vector<double> near_w;
  std::vector<double> moments;  // split x kSeriesTerms
  std::vector<double> tmp;

  Impl(const RadialGrid& g, Sector s) : grid(g), sector(s) {
    if (grid_kind_for(sector) != grid.kind()) {
      throw InvalidArgument("sector " + std::string(to_string(sector)) +
                            " needs a " +
                            std::string(to_string(grid_kind_for(sector))) +
                            " grid");
    }
    n = grid.size();
    l = orbital_index(sector);
    const std::size_t m = grid.half_count();
    len = fft_friendly_size(is_one_dimensional(sector) ? 3 * m + 1 : 2 * m);
    half = len / 2 + 1;

    real = FftwBuffer<double>(len);
    acc = FftwBuffer<fftw_complex>(half);
    const int groups = is_one_dimensional(sector) ? 1 : l + 1;
    for (int k = 0; k < groups; ++k) inputs.emplace_back(half);
    {
      std::lock_guard lock(planner_mutex());
      forward = Plan(fftw_plan_dft_r2c_1d(static_cast<int>(len), real.data,
                                          inputs[0].data, FFTW_ESTIMATE));
      inverse = Plan(fftw_plan_dft_c2r_1d(static_cast<int>(len), acc.data,
                                          real.data, FFTW_ESTIMATE));
    }
    if (is_one_dimensional(sector)) {
      init_line();
    } else {
      init_radial();
    }
  }

  std::vector<cplx> spectrum_of(const std::vector<double>& v) {
    std::copy(v.begin(), v.end(), real.data);
    fftw_execute_dft_r2c(forward.p, real.data, acc.data);
    std::vector<cplx> out(half);
    const double scale = 1.0 / static_cast<double>(len);
    for (std::size_t k = 0; k < half; ++k) {
      out[k] = cplx(acc.data[k][0], acc.data[k][1]) * scale;
    }
    return out;
  }

  void init_line() {
    const std::size_t m = grid.half_count();
    const double dx = grid.step();
    diag.assign(n, kernels::line_diagonal(grid));
    std::vector<double> c(len, 0.0);
    for (std::size_t k = 1; k <= m; ++k) {
      const double w = kernels::line_weight(static_cast<double>(k) * dx) * dx;
      c[k] = w;
      c[len - k] = w;
    }
    line = spectrum_of(c);
  }

  void init_radial() {
    const std::size_t m = n;
    diag = kernels::radial_diagonal(grid);
    rho.resize(m);
    for (std::size_t j = 0; j < m; ++j) rho[j] = static_cast<double>(j) + 0.5;

    std::vector<double> v(len, 0.0);
    for (std::size_t d = 1; d + 1 <= m; ++d) {
      const double dd = static_cast<double>(d);
      v[d] = v[len - d] = 1.0 / (dd * dd);
    }
    kt = spectrum_of(v);
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t s = 0; s + 1 < 2 * m; ++s) {
      const double ss = static_cast<double>(s + 1);
      v[s] = 1.0 / (ss * ss);
    }
    kh = spectrum_of(v);
    if (l > 0) {
      std::fill(v.begin(), v.end(), 0.0);
      for (std::size_t d = 1; d + 1 <= m; ++d) {
        v[d] = v[len - d] = 2.0 * std::log(static_cast<double>(d));
      }
      lt = spectrum_of(v);
      std::fill(v.begin(), v.end(), 0.0);
      for (std::size_t s = 0; s + 1 < 2 * m; ++s) {
        v[s] = 2.0 * std::log(static_cast<double>(s + 1));
      }
      lh = spectrum_of(v);
    }
    init_stable_rows();
  }

  void init_stable_rows() {
    const std::size_t m = n;
    const auto by_radius =
        static_cast<std::size_t>(std::ceil(0.25 / grid.step()));
    split = std::min(m, std::max<std::size_t>(64, by_radius));
    near_end.resize(split);
    near_offset.resize(split + 1);
    near_offset[0] = 0;
    for (std::size_t i = 0; i < split; ++i) {
      near_end[i] = std::min(m, 4 * (i + 1));
      near_offset[i + 1] = near_offset[i] + near_end[i];
    }
    near_w.assign(near_offset[split], 0.0);
    for (std::size_t i = 0; i < split; ++i) {
      double* row = near_w.data() + near_offset[i];
      for (std::size_t j = 0; j < near_end[i]; ++j) {
        if (j != i) row[j] = kernels::radial_weight(l, rho[j], rho[i]);
      }
    }
    moments.assign(split * kernels::kSeriesTerms, 0.0);
    tmp.resize(m);
  }

  static cplx at(const fftw_complex* a, std::size_t k) {
    return {a[k][0], a[k][1]};
  }

  // acc += coef * (T G - H conj(G)) for the given kernel pair
  void accumulate(const std::vector<cplx>& t, const std::vector<cplx>& h,
                  const fftw_complex* g, double coef) {
    for (std::size_t k = 0; k < half; ++k) {
      const cplx gk = at(g, k);
      const cplx v = coef * (t[k] * gk - h[k] * std::conj(gk));
      acc.data[k][0] += v.real();
      acc.data[k][1] += v.imag();
    }
  }

  void clear_acc() { std::fill_n(&acc.data[0][0], 2 * half, 0.0); }

  void apply_line(std::span<const double> f, std::span<double> out) {
    std::copy(f.begin(), f.end(), real.data);
    std::fill(real.data + n, real.data + len, 0.0);
    fftw_execute_dft_r2c(forward.p, real.data, acc.data);
    for (std::size_t k = 0; k < half; ++k) {
      const cplx v = at(acc.data, k) * line[k];
      acc.data[k][0] = v.real();
      acc.data[k][1] = v.imag();
    }
    fftw_execute_dft_c2r(inverse.p, acc.data, real.data);
    const double d = diag[0];
    for (std::size_t i = 0; i < n; ++i) out[i] = d * f[i] - real.data[i];
  }

  void apply_radial(std::span<const double> f, std::span<double> out) {
    const double dx = grid.step();
    // rho^(2q+1) f for q = 0..l
    std::vector<double>& sq = tmp;
    for (std::size_t j = 0; j < n; ++j) sq[j] = rho[j] * rho[j];
    for (int q = 0; q <= l; ++q) {
      for (std::size_t j = 0; j < n; ++j) {
        double w = f[j] * rho[j];
        for (int k = 0; k < q; ++k) w *= sq[j];
        real.data[j] = w;
      }
      std::fill(real.data + n, real.data + len, 0.0);
      fftw_execute_dft_r2c(forward.p, real.data, inputs[q].data);
    }

    // out holds the off-diagonal sums, one p-power group at a time
    std::fill(out.begin(), out.end(), 0.0);
    auto group = [&](int power, auto&& fill) {
      clear_acc();
      fill();
      fftw_execute_dft_c2r(inverse.p, acc.data, real.data);
      for (std::size_t i = 0; i < n; ++i) {
        double pp = 1.0;
        for (int k = 0; k < power; ++k) pp *= sq[i];
        out[i] += pp * real.data[i];
      }
    };
    double denom_scale = 0.0;
    int denom_power = 0;
    if (l == 0) {
      group(0, [&] { accumulate(kt, kh, inputs[0].data, 1.0); });
      denom_scale = kPi;
      denom_power = 1;
    } else if (l == 1) {
      group(0, [&] {
        accumulate(kt, kh, inputs[1].data, 1.0);
        accumulate(lt, lh, inputs[0].data, 1.0);
      });
      group(1, [&] { accumulate(kt, kh, inputs[0].data, 1.0); });
      denom_scale = 2.0 * kPi;
      denom_power = 3;
    } else {
      group(0, [&] {
        accumulate(kt, kh, inputs[2].data, 3.0);
        accumulate(lt, lh, inputs[1].data, 3.0);
      });
      group(1, [&] {
        accumulate(kt, kh, inputs[1].data, -2.0);
        accumulate(lt, lh, inputs[0].data, 3.0);
      });
      group(2, [&] { accumulate(kt, kh, inputs[0].data, 3.0); });
      denom_scale = 4.0 * kPi;
      denom_power = 5;
    }
    for (std::size_t i = split; i < n; ++i) {
      // the Hankel pieces picked up the skipped node j = i; put it back
      const double p = rho[i];
      const double hk = 1.0 / (4.0 * sq[i]);
      const double hl = 2.0 * std::log(2.0 * p);
      double self = hk * p;
      if (l == 1) self = 2.0 * hk * p * sq[i] + hl * p;
      if (l == 2) self = 4.0 * hk * p * sq[i] * sq[i] + 6.0 * hl * p * sq[i];
      double pp = 1.0;
      for (int k = 0; k < denom_power; ++k) pp *= p;
      out[i] = (out[i] + self * f[i]) / (denom_scale * pp);
    }

    stable_rows(f, out);

    for (std::size_t i = 0; i < n; ++i) out[i] = diag[i] * f[i] - out[i] / dx;
  }

  void stable_rows(std::span<const double> f, std::span<double> out) {
    constexpr int terms = kernels::kSeriesTerms;
    double s[terms] = {};
    // near_end is increasing, so walk j downward and snapshot at each J_i
    std::size_t row = split;
    for (std::size_t jj = n; jj-- > 0;) {
      while (row > 0 && near_end[row - 1] == jj + 1) {
        --row;
        std::copy(s, s + terms, moments.data() + row * terms);
      }
      if (row == 0) break;
      const double x = 1.0 / (rho[jj] * rho[jj]);
      double w = f[jj] * x;
      for (int k = 0; k < terms; ++k) {
        s[k] += w;
        w *= x;
      }
    }
    for (std::size_t i = 0; i < split; ++i) {
      const double* w = near_w.data() + near_offset[i];
      double acc_near = 0.0;
      for (std::size_t j = 0; j < near_end[i]; ++j) acc_near += w[j] * f[j];
      double acc_far = 0.0;
      if (near_end[i] < n) {
        const double p2 = rho[i] * rho[i];
        const double* mo = moments.data() + i * terms;
        double pk = 1.0;
        for (int k = 0; k < terms; ++k) {
          acc_far += kernels::series_coefficient(l, k) * pk * mo[k];
          pk *= p2;
        }
        acc_far /= kPi;
      }
      out[i] = acc_near + acc_far;
    }
  }
};

KernelOperator::KernelOperator(const RadialGrid& grid, Sector sector)
    : impl_(std::make_unique<Impl>(grid, sector)) {}
KernelOperator::~KernelOperator() = default;
KernelOperator::KernelOperator(KernelOperator&&) noexcept = default;
KernelOperator& KernelOperator::operator=(KernelOperator&&) noexcept = default;

const RadialGrid& KernelOperator::grid() const noexcept { return impl_->grid; }
Sector KernelOperator::sector() const noexcept { return impl_->sector; }
std::size_t KernelOperator::stable_rows() const noexcept { return impl_->split; }
std::span<const double> KernelOperator::diagonal() const noexcept {
  return impl_->diag;
}

void KernelOperator::apply(std::span<const double> f, std::span<double> out) {
  if (f.size() != impl_->n || out.size() != impl_->n) {
    throw InvalidArgument("KernelOperator::apply: size mismatch");
  }
  if (is_one_dimensional(impl_->sector)) {
    impl_->apply_line(f, out);
  } else {
    impl_->apply_radial(f, out);
  }
}

std::vector<double> KernelOperator::apply(std::span<const double> f) {
  std::vector<double> out(f.size());
  apply(f, out);
  return out;
}

}  // namespace uwell
