#include "otlab/star_body.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace otlab {

double StarBody2D::radial(double theta) const {
  int mm = m();
  double tau = 2.0 * std::numbers::pi;
  double s = theta / tau * mm;
  double j = std::floor(s);
  double frac = s - j;
  int a = ((int)j % mm + mm) % mm;
  int b = (a + 1) % mm;
  return (1.0 - frac) * rho[a] + frac * rho[b];
}

bool StarBody2D::contains(double x, double y, double scale) const {
  double r2 = x * x + y * y;
  if (r2 == 0.0) return true;
  double rr = scale * radial(std::atan2(y, x));
  return r2 <= rr * rr;
}

double StarBody2D::max_radius() const {
  return *std::max_element(rho.begin(), rho.end());
}

StarBody2D StarBody2D::disc(double r, int m) {
  if (r <= 0.0) throw UnsupportedError("disc radius must be positive");
  StarBody2D k;
  k.rho.assign(m, r);
  return k;
}

StarBody2D StarBody2D::random(std::uint64_t seed, double smoothness, int m) {
  if (m < 16) throw UnsupportedError("angle grid too coarse");
  if (smoothness <= 0.0) throw UnsupportedError("smoothness must be positive");
  SplitMix64 g(seed);
  const int K = 16;
  const double k0 = 6.0, amp = 0.15;
  // |s| <= sqrt(2) * w, so radii stay inside rbar * exp(+-amp*sqrt(2)/smoothness)
  double rbar = g.uniform(1.16, 1.30);
  std::vector<double> a(K), b(K);
  double w = 0.0;
  for (int k = 1; k <= K; ++k) w += std::exp(-k / k0);
  for (int k = 0; k < K; ++k) {
    a[k] = g.uniform(-1.0, 1.0);
    b[k] = g.uniform(-1.0, 1.0);
  }
  StarBody2D body;
  body.rho.resize(m);
  for (int j = 0; j < m; ++j) {
    double th = 2.0 * std::numbers::pi * j / m;
    double s = 0.0;
    for (int k = 1; k <= K; ++k)
      s += (a[k - 1] * std::cos(k * th) + b[k - 1] * std::sin(k * th)) *
           std::exp(-k / k0);
    body.rho[j] = rbar * std::exp(amp * s / (smoothness * w));
  }
  return body;
}

long NodeRaster::count() const {
  long c = 0;
  for (std::uint8_t b : mask) c += b;
  return c;
}

NodeRaster rasterize(const StarBody2D& k, double scale, double domain_half,
                     int cells) {
  if (cells % 2 != 0) throw UnsupportedError("cells must be even");
  NodeRaster r;
  r.lo = -domain_half;
  r.h = 2.0 * domain_half / cells;
  r.nn = cells + 1;
  r.mask.assign((long)r.nn * r.nn, 0);
  for (int iy = 0; iy < r.nn; ++iy) {
    double y = r.lo + iy * r.h;
    for (int ix = 0; ix < r.nn; ++ix) {
      double x = r.lo + ix * r.h;
      if (k.contains(x, y, scale)) r.mask[(long)iy * r.nn + ix] = 1;
    }
  }
  return r;
}

namespace {

std::mutex fftw_mutex;

int fast_fft_size(int n) {
  for (int s = n;; ++s) {
    int r = s;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    if (r == 1) return s;
  }
}

struct BBox {
  int x0 = 0, x1 = -1, y0 = 0, y1 = -1;
  int w() const { return x1 - x0 + 1; }
  int h() const { return y1 - y0 + 1; }
};

BBox bbox_of(const NodeRaster& r) {
  BBox b;
  b.x0 = r.nn;
  b.y0 = r.nn;
  for (int iy = 0; iy < r.nn; ++iy)
    for (int ix = 0; ix < r.nn; ++ix)
      if (r.at(ix, iy)) {
        b.x0 = std::min(b.x0, ix);
        b.x1 = std::max(b.x1, ix);
        b.y0 = std::min(b.y0, iy);
        b.y1 = std::max(b.y1, iy);
      }
  if (b.x1 < b.x0) throw ZeroMassError("empty raster");
  return b;
}

// pair counts of the two masks: out[y][x] = #{(a,b) : a + b = (x,y)}
std::vector<double> conv2d_counts(const std::vector<double>& a, int wa, int ha,
                                  const std::vector<double>& b, int wb, int hb,
                                  int& wo, int& ho) {
  wo = wa + wb - 1;
  ho = ha + hb - 1;
  int W = fast_fft_size(wo), H = fast_fft_size(ho);
  int Wc = W / 2 + 1;
  double* ra = fftw_alloc_real((long)W * H);
  double* rb = fftw_alloc_real((long)W * H);
  fftw_complex* ca = fftw_alloc_complex((long)Wc * H);
  fftw_complex* cb = fftw_alloc_complex((long)Wc * H);
  std::fill(ra, ra + (long)W * H, 0.0);
  std::fill(rb, rb + (long)W * H, 0.0);
  for (int y = 0; y < ha; ++y)
    std::copy(a.begin() + (long)y * wa, a.begin() + (long)y * wa + wa,
              ra + (long)y * W);
  for (int y = 0; y < hb; ++y)
    std::copy(b.begin() + (long)y * wb, b.begin() + (long)y * wb + wb,
              rb + (long)y * W);

  fftw_plan pa, pb, pinv;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    pa = fftw_plan_dft_r2c_2d(H, W, ra, ca, FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_2d(H, W, rb, cb, FFTW_ESTIMATE);
    pinv = fftw_plan_dft_c2r_2d(H, W, ca, ra, FFTW_ESTIMATE);
  }
  fftw_execute(pa);
  fftw_execute(pb);
  double inv = 1.0 / ((double)W * H);
  for (long i = 0; i < (long)Wc * H; ++i) {
    double re = ca[i][0] * cb[i][0] - ca[i][1] * cb[i][1];
    double im = ca[i][0] * cb[i][1] + ca[i][1] * cb[i][0];
    ca[i][0] = re * inv;
    ca[i][1] = im * inv;
  }
  fftw_execute(pinv);
  std::vector<double> out((long)wo * ho);
  for (int y = 0; y < ho; ++y)
    std::copy(ra + (long)y * W, ra + (long)y * W + wo,
              out.begin() + (long)y * wo);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pinv);
  }
  fftw_free(ra);
  fftw_free(rb);
  fftw_free(ca);
  fftw_free(cb);
  return out;
}

NodeRaster embed_in_sum_lattice(const NodeRaster& r, int cells) {
  NodeRaster out;
  out.lo = 2.0 * r.lo;
  out.h = r.h;
  out.nn = 2 * cells + 1;
  out.mask.assign((long)out.nn * out.nn, 0);
  int off = cells / 2;
  for (int iy = 0; iy < r.nn; ++iy)
    for (int ix = 0; ix < r.nn; ++ix)
      if (r.at(ix, iy))
        out.mask[(long)(iy + off) * out.nn + (ix + off)] = 1;
  return out;
}

NodeRaster dilate_one(const NodeRaster& r) {
  NodeRaster out = r;
  for (int iy = 0; iy < r.nn; ++iy)
    for (int ix = 0; ix < r.nn; ++ix) {
      if (!r.at(ix, iy)) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          int x = ix + dx, y = iy + dy;
          if (x >= 0 && x < r.nn && y >= 0 && y < r.nn)
            out.mask[(long)y * out.nn + x] = 1;
        }
    }
  return out;
}

}  // namespace

MinkowskiAverage minkowski_average(const StarBody2D& k0, const StarBody2D& k1,
                                   double t, double domain_half, int cells) {
  if (t < 0.0 || t > 1.0) throw UnsupportedError("t outside [0,1]");
  MinkowskiAverage avg;
  avg.t = t;
  if (t == 0.0 || t == 1.0) {
    NodeRaster r = rasterize(t == 0.0 ? k0 : k1, 1.0, domain_half, cells);
    avg.inner = embed_in_sum_lattice(r, cells);
    avg.outer = avg.inner;
    return avg;
  }
  NodeRaster ra = rasterize(k0, 1.0 - t, domain_half, cells);
  NodeRaster rb = rasterize(k1, t, domain_half, cells);
  BBox ba = bbox_of(ra), bb = bbox_of(rb);
  std::vector<double> da((long)ba.w() * ba.h()), db((long)bb.w() * bb.h());
  for (int y = 0; y < ba.h(); ++y)
    for (int x = 0; x < ba.w(); ++x)
      da[(long)y * ba.w() + x] = ra.at(ba.x0 + x, ba.y0 + y) ? 1.0 : 0.0;
  for (int y = 0; y < bb.h(); ++y)
    for (int x = 0; x < bb.w(); ++x)
      db[(long)y * bb.w() + x] = rb.at(bb.x0 + x, bb.y0 + y) ? 1.0 : 0.0;

  int wo = 0, ho = 0;
  std::vector<double> counts =
      conv2d_counts(da, ba.w(), ba.h(), db, bb.w(), bb.h(), wo, ho);

  avg.inner.lo = 2.0 * ra.lo;
  avg.inner.h = ra.h;
  avg.inner.nn = 2 * cells + 1;
  avg.inner.mask.assign((long)avg.inner.nn * avg.inner.nn, 0);
  int offx = ba.x0 + bb.x0, offy = ba.y0 + bb.y0;  // index sums carry over
  for (int y = 0; y < ho; ++y)
    for (int x = 0; x < wo; ++x)
      if (counts[(long)y * wo + x] >= 0.5) {
        int gx = x + offx, gy = y + offy;
        if (gx >= 0 && gx < avg.inner.nn && gy >= 0 && gy < avg.inner.nn)
          avg.inner.mask[(long)gy * avg.inner.nn + gx] = 1;
      }
  avg.outer = dilate_one(avg.inner);
  return avg;
}

double body_measure(const ReferenceMeasure2D& nu, const NodeRaster& r) {
  const auto& pot = nu.pot;
  double p = pot.p;
  double cp = pot.euclidean ? std::pow(pot.scale, p) : 0.0;
  double acc = 0.0;
  for (int iy = 0; iy < r.nn; ++iy) {
    double y = r.lo + iy * r.h;
    const std::uint8_t* row = &r.mask[(long)iy * r.nn];
    for (int ix = 0; ix < r.nn; ++ix) {
      if (!row[ix]) continue;
      double x = r.lo + ix * r.h;
      double V;
      if (pot.euclidean) {
        double r2 = x * x + y * y;
        if (p == 2.0)
          V = cp * r2;
        else if (p == 4.0)
          V = cp * r2 * r2;
        else if (p == 1.5) {
          double rr = std::sqrt(r2);
          V = cp * rr * std::sqrt(rr);
        } else
          V = cp * std::pow(r2, 0.5 * p);
      } else {
        V = pot(Vec2(x, y));
      }
      acc += std::exp(-V + nu.c);
    }
  }
  return acc * r.h * r.h;
}

}  // namespace otlab
