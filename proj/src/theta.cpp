#include "ellspin/theta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ellspin {

namespace {

std::string fmt_cplx(cplx z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

Lattice::Lattice(cplx tau) : tau_(tau) {
  if (!(tau.imag() >= 0.1)) {
    throw std::domain_error("lattice modulus requires Im tau >= 0.1, got tau = " +
                            fmt_cplx(tau));
  }
  p_ = std::exp(I_UNIT * PI * tau);
}

// One series evaluation after argument reduction.  The half-period factor
// p^{1/4} common to numerator and normalisation is cancelled, so the n-th
// term carries p^{n^2+n}.  |Im x_red| <= Im(tau)/2 guarantees the a-priori
// term bound decays like |p|^{n^2 - 1/2}.
ThetaValue theta(cplx x, const Lattice& lat) {
  const cplx tau = lat.tau();
  const long long b = std::llround(x.imag() / tau.imag());
  const cplx x1 = x - static_cast<double>(b) * tau;
  const long long a = std::llround(x1.real());
  const cplx xr = x1 - static_cast<double>(a);

  const cplx p = lat.nome();
  const cplx p2 = p * p;
  const double ap = std::abs(p);
  const double growth = std::exp(PI * std::abs(xr.imag()));

  cplx s_val = 0.0;   // sum (-1)^n p^{n^2+n} sin((2n+1) pi x)
  cplx s_der = 0.0;   // sum (-1)^n p^{n^2+n} (2n+1) cos((2n+1) pi x)
  cplx s_dd = 0.0;    // sum (-1)^n p^{n^2+n} (2n+1)^2 sin((2n+1) pi x)
  cplx s_nrm = 0.0;   // s_der at x = 0
  double sign = 1.0;
  cplx pk = 1.0;      // p^{n^2+n}
  cplx p2n = 1.0;     // p^{2n}
  for (int n = 0;; ++n) {
    const cplx ang = static_cast<double>(2 * n + 1) * PI * xr;
    const cplx base = sign * pk;
    const cplx sn = std::sin(ang);
    s_val += base * sn;
    s_der += base * static_cast<double>(2 * n + 1) * std::cos(ang);
    s_dd += base * static_cast<double>((2 * n + 1) * (2 * n + 1)) * sn;
    s_nrm += base * static_cast<double>(2 * n + 1);

    const double next = std::pow(ap, static_cast<double>((n + 1) * (n + 2))) *
                        static_cast<double>((2 * n + 3) * (2 * n + 3)) *
                        std::pow(growth, static_cast<double>(2 * n + 3));
    const double scale = std::max({std::abs(s_val), std::abs(s_der), std::abs(s_nrm)});
    if (next < 1e-18 * scale) break;
    if (n >= 64) {
      throw std::runtime_error("theta series exceeded 64 terms; Im tau gate violated?");
    }
    sign = -sign;
    p2n *= p2;
    pk *= p2n;  // exponent grows by 2(n+1) when stepping n -> n+1
  }

  const cplx th_r = s_val / (PI * s_nrm);
  const cplx dth_r = s_der / s_nrm;
  const cplx ddth_r = -PI * s_dd / s_nrm;
  if (b == 0 && a == 0) return {th_r, dth_r, ddth_r};

  const double parity = ((a + b) & 1LL) ? -1.0 : 1.0;
  const double bd = static_cast<double>(b);
  const cplx unfold =
      parity * std::exp(-I_UNIT * PI * tau * bd * bd - 2.0 * PI * I_UNIT * bd * xr);
  const cplx tw = -2.0 * PI * I_UNIT * bd;
  return {unfold * th_r, unfold * (dth_r + tw * th_r),
          unfold * (ddth_r + 2.0 * tw * dth_r + tw * tw * th_r)};
}

cplx theta_logd(cplx x, const Lattice& lat) {
  const ThetaValue t = theta(x, lat);
  if (std::abs(t.value) < 1e-12 * std::max(1.0, std::abs(t.deriv))) {
    throw PoleError("theta log-derivative at a lattice zero, x = " + fmt_cplx(x));
  }
  return t.deriv / t.value;
}

PhiValue kronecker_phi(cplx u, cplx v, const Lattice& lat) {
  const ThetaValue tu = theta(u, lat);
  const ThetaValue tv = theta(v, lat);
  if (std::abs(tu.value) < 1e-12 * std::max(1.0, std::abs(tu.deriv))) {
    throw PoleError("kernel pole: first argument on the lattice, u = " + fmt_cplx(u));
  }
  if (std::abs(tv.value) < 1e-12 * std::max(1.0, std::abs(tv.deriv))) {
    throw PoleError("kernel pole: second argument on the lattice, v = " + fmt_cplx(v));
  }
  const ThetaValue ts = theta(u + v, lat);
  const cplx denom = tu.value * tv.value;
  const cplx lam_u = tu.deriv / tu.value;
  const cplx val = ts.value / denom;
  const cplx d_u = ts.deriv / denom - val * lam_u;
  const cplx d2_u = ts.deriv2 / denom - 2.0 * d_u * lam_u - val * (tu.deriv2 / tu.value);
  return {val, d_u, d2_u};
}

double lattice_distance(cplx x, const Lattice& lat) {
  const cplx tau = lat.tau();
  const double bb = x.imag() / tau.imag();
  const double aa = x.real() - bb * tau.real();
  const double da = aa - std::round(aa);
  const double db = bb - std::round(bb);
  return std::hypot(da, db);
}

}  // namespace ellspin
