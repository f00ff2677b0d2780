#ifndef NSFP_FFT_HPP
#define NSFP_FFT_HPP

// Thin wrapper around FFTW for the batched real transforms used by the
// solver. Plans are created once per layout under a global mutex and then
// executed through the new-array interface, which FFTW guarantees to be
// thread safe. All plans use FFTW_ESTIMATE so the floating point results do
// not depend on timing measurements.

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

namespace nsfp::fft {

using cplx = std::complex<double>;

/// A batched real-to-complex / complex-to-real transform pair.
///
/// Forward transforms are normalized by the transform size so that the
/// output holds Fourier coefficients (f = sum_k fhat_k e^{ik.x}); inverse
/// transforms are plain synthesis.
class RealTransform {
 public:
  struct Layout {
    std::vector<int> dims;
    int howmany = 1;
    int real_stride = 1;
    int real_dist = 0;
    int cplx_stride = 1;
    int cplx_dist = 0;
    std::size_t real_size = 0;
    std::size_t cplx_size = 0;
  };

  explicit RealTransform(Layout layout) : layout_(std::move(layout)) {
    std::vector<double> rbuf(layout_.real_size);
    std::vector<fftw_complex> cbuf(layout_.cplx_size);
    const int rank = static_cast<int>(layout_.dims.size());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_many_dft_r2c(rank, layout_.dims.data(), layout_.howmany, rbuf.data(),
                                      nullptr, layout_.real_stride, layout_.real_dist,
                                      cbuf.data(), nullptr, layout_.cplx_stride,
                                      layout_.cplx_dist, flags);
    inverse_ = fftw_plan_many_dft_c2r(rank, layout_.dims.data(), layout_.howmany, cbuf.data(),
                                      nullptr, layout_.cplx_stride, layout_.cplx_dist,
                                      rbuf.data(), nullptr, layout_.real_stride,
                                      layout_.real_dist, flags);
    scale_ = 1.0;
    for (int d : layout_.dims) scale_ /= d;
  }

  RealTransform(const RealTransform&) = delete;
  RealTransform& operator=(const RealTransform&) = delete;

  ~RealTransform() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }

  const Layout& layout() const { return layout_; }

  void forward(std::span<const double> in, std::span<cplx> out) const {
    fftw_execute_dft_r2c(forward_, const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
    for (auto& c : out) c *= scale_;
  }

  // The complex input is copied first: multi-dimensional c2r transforms
  // overwrite their input.
  void inverse(std::span<const cplx> in, std::span<double> out) const {
    std::vector<cplx> scratch(in.begin(), in.end());
    fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(scratch.data()),
                         out.data());
  }

 private:
  Layout layout_;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
  double scale_ = 1.0;
};

namespace detail {

inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class Key, class Make>
const RealTransform& cached(const Key& key, Make&& make) {
  static std::map<Key, std::unique_ptr<RealTransform>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<RealTransform>(make())).first;
  return *it->second;
}

}  // namespace detail

/// Single nx-by-nx plane, row-major.
inline const RealTransform& plane(int nx) {
  return detail::cached(std::tuple{0, nx, 1}, [nx] {
    RealTransform::Layout l;
    l.dims = {nx, nx};
    l.real_size = std::size_t(nx) * nx;
    l.cplx_size = std::size_t(nx) * (nx / 2 + 1);
    l.real_dist = static_cast<int>(l.real_size);
    l.cplx_dist = static_cast<int>(l.cplx_size);
    return l;
  });
}

/// nm interleaved nx-by-nx planes: element (i1, i2, m) at (i1*nx + i2)*nm + m.
inline const RealTransform& plane_batch(int nx, int nm) {
  return detail::cached(std::tuple{1, nx, nm}, [nx, nm] {
    RealTransform::Layout l;
    l.dims = {nx, nx};
    l.howmany = nm;
    l.real_stride = nm;
    l.real_dist = 1;
    l.cplx_stride = nm;
    l.cplx_dist = 1;
    l.real_size = std::size_t(nx) * nx * nm;
    l.cplx_size = std::size_t(nx) * (nx / 2 + 1) * nm;
    return l;
  });
}

/// `count` contiguous circle slices of length nm.
inline const RealTransform& circle_batch(int nm, int count) {
  return detail::cached(std::tuple{2, nm, count}, [nm, count] {
    RealTransform::Layout l;
    l.dims = {nm};
    l.howmany = count;
    l.real_dist = nm;
    l.cplx_dist = nm / 2 + 1;
    l.real_size = std::size_t(nm) * count;
    l.cplx_size = std::size_t(nm / 2 + 1) * count;
    return l;
  });
}

}  // namespace nsfp::fft

#endif  // NSFP_FFT_HPP
