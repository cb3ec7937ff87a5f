#include "mstab/exact.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>
#include <vector>

namespace mstab {

namespace {

constexpr long double kEps = LDBL_EPSILON * 8;

long double rounding_slack(long double magnitude) {
  return std::fabs(magnitude) * kEps + LDBL_MIN;
}

// Real surd products in a fixed Q(sqrt d).
void surd_mul(const Q& x, const Q& y, const Q& u, const Q& v, int d, Q& ra, Q& rb) {
  Q a = x * u + y * v * d;
  Q b = x * v + y * u;
  ra = a;
  rb = b;
}

int surd_sign(const Q& a, const Q& b, int d) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0 || d == 1) return sgn(a + b);
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Q lhs = a * a, rhs = b * b * d;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;  // unreachable for non-square d
}

}  // namespace

Q parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw UsageError("empty rational");
  auto dot = s.find('.');
  try {
    if (dot == std::string::npos) {
      Q q(s, 10);
      q.canonicalize();
      if (q.get_den() == 0) throw UsageError("zero denominator in '" + raw + "'");
      return q;
    }
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    for (char c : ip + fp)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw UsageError("bad number '" + raw + "'");
    mpz_class num(ip + fp, 10);
    mpz_class den = 1;
    for (size_t k = 0; k < fp.size(); ++k) den *= 10;
    Q q(num, den);
    q.canonicalize();
    return neg ? Q(-q) : q;
  } catch (const std::invalid_argument&) {
    throw UsageError("bad number '" + raw + "'");
  }
}

std::string to_string(const Q& q) { return q.get_str(); }

int Surd::sign() const { return surd_sign(a, b, d); }

long double Surd::approx() const {
  return a.get_d() + b.get_d() * std::sqrt(static_cast<long double>(d));
}

CNum::CNum(long v) {
  if (v != 0) terms_[Q(0)] = Part{Q(v), Q(0), Q(0), Q(0)};
}

CNum::CNum(const Q& re, const Q& im) {
  terms_[Q(0)] = Part{re, Q(0), im, Q(0)};
  normalize();
}

CNum CNum::surd(int d, const Q& re_a, const Q& re_b, const Q& im_a, const Q& im_b) {
  if (d != 1 && d != 2 && d != 3) throw InternalError("unsupported square root");
  CNum z;
  z.d_ = d;
  z.terms_[Q(0)] = Part{re_a, re_b, im_a, im_b};
  z.normalize();
  return z;
}

CNum CNum::exp_pi(const Q& y) {
  CNum z;
  Q k = y;
  k.canonicalize();
  z.terms_[k] = Part{Q(1), Q(0), Q(0), Q(0)};
  return z;
}

CNum CNum::ball(long double re, long double im, long double rad) {
  CNum z;
  z.is_ball_ = true;
  z.bre_ = re;
  z.bim_ = im;
  z.rad_ = rad;
  return z;
}

void CNum::normalize() {
  if (is_ball_) return;
  bool any_root = false;
  for (auto it = terms_.begin(); it != terms_.end();) {
    Part& p = it->second;
    for (Q* q : {&p.ra, &p.rb, &p.ia, &p.ib}) q->canonicalize();
    if (d_ == 1) {
      p.ra += p.rb;
      p.ia += p.ib;
      p.rb = 0;
      p.ib = 0;
    }
    any_root |= p.rb != 0 || p.ib != 0;
    it = p.zero() ? terms_.erase(it) : std::next(it);
  }
  if (!any_root) d_ = 1;
}

bool CNum::exact() const { return !is_ball_ && (terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0)); }

bool CNum::gaussian_rational() const { return exact() && d_ == 1; }

Surd CNum::re() const {
  if (!exact()) throw InternalError("exact part requested from a non-algebraic value");
  if (terms_.empty()) return {Q(0), Q(0), d_};
  const Part& p = terms_.begin()->second;
  return {p.ra, p.rb, d_};
}
Surd CNum::im() const {
  if (!exact()) throw InternalError("exact part requested from a non-algebraic value");
  if (terms_.empty()) return {Q(0), Q(0), d_};
  const Part& p = terms_.begin()->second;
  return {p.ia, p.ib, d_};
}
Q CNum::re_q() const {
  if (!gaussian_rational()) throw InternalError("rational part requested from a non-rational value");
  return re().a;
}
Q CNum::im_q() const {
  if (!gaussian_rational()) throw InternalError("rational part requested from a non-rational value");
  return im().a;
}

namespace {

long double exp_factor(const Q& y) {
  return std::exp(static_cast<long double>(M_PI) * static_cast<long double>(y.get_d()));
}

// Relative error of exp_factor(y): y passes through a double.
long double exp_error(const Q& y) {
  if (y == 0) return 0;
  long double py = std::fabs(static_cast<long double>(M_PI) * static_cast<long double>(y.get_d()));
  return kEps * (4 + py) + DBL_EPSILON * py;
}

}  // namespace

std::complex<long double> CNum::approx() const {
  if (is_ball_) return {bre_, bim_};
  std::complex<long double> out = 0;
  for (const auto& [y, p] : terms_) {
    Surd r{p.ra, p.rb, d_}, i{p.ia, p.ib, d_};
    out += std::complex<long double>(r.approx(), i.approx()) * exp_factor(y);
  }
  return out;
}

long double CNum::radius() const {
  if (is_ball_) return rad_;
  if (exact()) return 0;
  long double r = LDBL_MIN;
  for (const auto& [y, p] : terms_) {
    Surd re{p.ra, p.rb, d_}, im{p.ia, p.ib, d_};
    long double m = std::abs(std::complex<long double>(re.approx(), im.approx())) * exp_factor(y);
    r += m * (exp_error(y) + 2 * kEps);
  }
  return r;
}

int CNum::term_sign(bool imaginary) const {
  int common = 0;
  bool mixed = false;
  for (const auto& [y, p] : terms_) {
    int sg = imaginary ? surd_sign(p.ia, p.ib, d_) : surd_sign(p.ra, p.rb, d_);
    if (sg == 0) continue;
    if (common == 0)
      common = sg;
    else if (sg != common)
      mixed = true;
  }
  if (!mixed) return common;
  auto c = approx();
  long double v = imaginary ? c.imag() : c.real();
  if (std::fabs(v) > radius()) return v > 0 ? 1 : -1;
  throw PrecisionError(std::string(imaginary ? "imaginary" : "real") + " part sign undecidable at working precision");
}

int CNum::sign_re() const {
  if (!is_ball_) return term_sign(false);
  if (bre_ == 0 && rad_ == 0) return 0;
  if (std::fabs(bre_) > rad_) return bre_ > 0 ? 1 : -1;
  throw PrecisionError("real part sign undecidable at working precision");
}

int CNum::sign_im() const {
  if (!is_ball_) return term_sign(true);
  if (bim_ == 0 && rad_ == 0) return 0;
  if (std::fabs(bim_) > rad_) return bim_ > 0 ? 1 : -1;
  throw PrecisionError("imaginary part sign undecidable at working precision");
}

bool CNum::is_zero() const {
  if (!is_ball_) return terms_.empty();
  if (bre_ == 0 && bim_ == 0 && rad_ == 0) return true;
  if (std::abs(std::complex<long double>(bre_, bim_)) > rad_) return false;
  throw PrecisionError("zero test undecidable at working precision");
}

CNum CNum::operator-() const {
  CNum z = *this;
  if (is_ball_) {
    z.bre_ = -bre_;
    z.bim_ = -bim_;
  } else {
    for (auto& [y, p] : z.terms_) {
      p.ra = -p.ra;
      p.rb = -p.rb;
      p.ia = -p.ia;
      p.ib = -p.ib;
    }
  }
  return z;
}

CNum CNum::conj() const {
  CNum z = *this;
  if (is_ball_) {
    z.bim_ = -bim_;
  } else {
    for (auto& [y, p] : z.terms_) {
      p.ia = -p.ia;
      p.ib = -p.ib;
    }
  }
  return z;
}

CNum CNum::to_ball() const {
  if (is_ball_) return *this;
  auto c = approx();
  return ball(c.real(), c.imag(), radius() + rounding_slack(std::abs(c)) * (d_ == 1 ? 1 : 4));
}

bool CNum::combine_roots(CNum& a, CNum& b) {
  if (a.is_ball_ || b.is_ball_) {
    a = a.to_ball();
    b = b.to_ball();
    return false;
  }
  if (a.d_ == b.d_) return true;
  if (a.d_ == 1) {
    a.d_ = b.d_;
    return true;
  }
  if (b.d_ == 1) {
    b.d_ = a.d_;
    return true;
  }
  a = a.to_ball();
  b = b.to_ball();
  return false;
}

CNum& CNum::operator+=(const CNum& o) {
  CNum b = o;
  if (combine_roots(*this, b)) {
    for (const auto& [y, p] : b.terms_) {
      Part& q = terms_[y];
      q.ra += p.ra;
      q.rb += p.rb;
      q.ia += p.ia;
      q.ib += p.ib;
    }
    normalize();
  } else {
    bre_ += b.bre_;
    bim_ += b.bim_;
    rad_ += b.rad_ + rounding_slack(std::abs(std::complex<long double>(bre_, bim_)));
  }
  return *this;
}

CNum& CNum::operator-=(const CNum& o) { return *this += -o; }

CNum& CNum::operator*=(const CNum& o) {
  if ((!is_ball_ && is_zero()) || (!o.is_ball_ && o.is_zero())) {
    *this = CNum();
    return *this;
  }
  CNum b = o;
  if (combine_roots(*this, b)) {
    int d = d_;
    std::map<Q, Part> out;
    for (const auto& [ya, x] : terms_)
      for (const auto& [yb, w] : b.terms_) {
        Q rr_a, rr_b, ii_a, ii_b, ri_a, ri_b, ir_a, ir_b;
        surd_mul(x.ra, x.rb, w.ra, w.rb, d, rr_a, rr_b);
        surd_mul(x.ia, x.ib, w.ia, w.ib, d, ii_a, ii_b);
        surd_mul(x.ra, x.rb, w.ia, w.ib, d, ri_a, ri_b);
        surd_mul(x.ia, x.ib, w.ra, w.rb, d, ir_a, ir_b);
        Q key = ya + yb;
        Part& q = out[key];
        q.ra += rr_a - ii_a;
        q.rb += rr_b - ii_b;
        q.ia += ri_a + ir_a;
        q.ib += ri_b + ir_b;
      }
    terms_ = std::move(out);
    normalize();
  } else {
    std::complex<long double> x(bre_, bim_), y(b.bre_, b.bim_);
    std::complex<long double> p = x * y;
    long double r = std::abs(x) * b.rad_ + std::abs(y) * rad_ + rad_ * b.rad_;
    bre_ = p.real();
    bim_ = p.imag();
    rad_ = r + 4 * rounding_slack(std::abs(x) * std::abs(y));
  }
  return *this;
}

Surd CNum::norm2() const {
  Surd r = re(), i = im();
  Q aa, ab, ba, bb;
  surd_mul(r.a, r.b, r.a, r.b, d_, aa, ab);
  surd_mul(i.a, i.b, i.a, i.b, d_, ba, bb);
  return {aa + ba, ab + bb, d_};
}

CNum CNum::inverse() const {
  if (is_ball_) {
    std::complex<long double> x(bre_, bim_);
    long double m = std::abs(x);
    if (m <= rad_) throw PrecisionError("division by a ball containing zero");
    std::complex<long double> q = 1.0L / x;
    long double r = rad_ / (m * (m - rad_));
    return ball(q.real(), q.imag(), r + 4 * rounding_slack(std::abs(q)));
  }
  if (is_zero()) throw ValidationError("division by zero");
  if (terms_.size() > 1) return to_ball().inverse();
  // c exp(pi y) with c algebraic
  const Q y = terms_.begin()->first;
  CNum c = *this;
  c.terms_.clear();
  c.terms_[Q(0)] = terms_.begin()->second;
  Surd n = c.norm2();
  // 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d)
  Q den = n.a * n.a - n.b * n.b * n.d;
  CNum s = CNum::surd(d_, n.a / den, -n.b / den, Q(0), Q(0));
  return c.conj() * s * exp_pi(-y);
}

bool CNum::operator==(const CNum& o) const {
  if (is_ball_ || o.is_ball_) return false;
  CNum a = *this, b = o;
  if (!combine_roots(a, b)) return false;
  return a.terms_ == b.terms_;
}

std::string CNum::str() const {
  std::ostringstream os;
  if (is_ball_) {
    os.precision(17);
    os << "(" << bre_ << (bim_ < 0 ? "" : "+") << bim_ << "i ± " << rad_ << ")";
    return os.str();
  }
  if (terms_.empty()) return "0+0i";
  auto part = [&](const Q& a, const Q& b) {
    std::ostringstream p;
    if (b == 0) {
      p << a.get_str();
    } else {
      p << "(" << a.get_str() << (b < 0 ? "" : "+") << b.get_str() << "*sqrt" << d_ << ")";
    }
    return p.str();
  };
  bool first = true;
  for (const auto& [y, p] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string c = part(p.ra, p.rb) + "+" + part(p.ia, p.ib) + "i";
    if (y == 0)
      os << c;
    else
      os << "(" << c << ")*exp(pi*" << y.get_str() << ")";
  }
  return os.str();
}

bool in_upper(const CNum& z) {
  int si = z.sign_im();
  if (si > 0) return true;
  if (si < 0) return false;
  return z.sign_re() < 0;
}

int compare_phase(const CNum& a, const CNum& b) {
  // cross(a, b) = Im(conj(a) * b) > 0 means b is counter-clockwise of a.
  CNum c = a.conj() * b;
  return -c.sign_im();
}

Phase phase_of(const CNum& z) {
  if (z.is_zero()) throw ValidationError("phase of a zero charge");
  Phase ph;
  auto c = z.approx();
  long double t = std::atan2(c.imag(), c.real()) / static_cast<long double>(M_PI);
  if (t <= 0) t += 2;
  if (t > 1 && in_upper(z)) t = 1;
  ph.value = t;
  if (z.is_ball()) return ph;
  struct Dir {
    int num, den, d;
    int ra, rb, ia, ib;  // unnormalized direction (ra + rb sqrt d) + i (ia + ib sqrt d)
  };
  static const std::vector<Dir> dirs = {
      {1, 6, 3, 0, 1, 1, 0},  {1, 4, 1, 1, 0, 1, 0},   {1, 3, 3, 1, 0, 0, 1},
      {1, 2, 1, 0, 0, 1, 0},  {2, 3, 3, -1, 0, 0, 1},  {3, 4, 1, -1, 0, 1, 0},
      {5, 6, 3, 0, -1, 1, 0}, {1, 1, 1, -1, 0, 0, 0},
  };
  for (const auto& dr : dirs) {
    if (z.root() != 1 && dr.d != 1 && dr.d != z.root()) continue;
    if (dr.d != 1 && z.root() == 1) {
      // a Gaussian rational is never parallel to a direction with an irrational slope
      continue;
    }
    CNum u = CNum::surd(dr.d, dr.ra, dr.rb, dr.ia, dr.ib);
    CNum p = u.conj() * z;
    bool hit = false;
    try {
      hit = p.sign_im() == 0 && p.sign_re() > 0;
    } catch (const PrecisionError&) {
    }
    if (hit) {
      ph.exact = Q(dr.num, dr.den);
      ph.exact->canonicalize();
      break;
    }
  }
  return ph;
}

namespace {

// cos and sin of m*pi/12 for m a multiple of 2 or 3, as surds.
bool exact_cis(int m, CNum& out) {
  m = ((m % 24) + 24) % 24;
  int sign = 1;
  if (m >= 12) {
    m -= 12;
    sign = -1;
  }
  Q h(1, 2);
  CNum v;
  switch (m) {
    case 0: v = CNum(Q(1), Q(0)); break;
    case 2: v = CNum::surd(3, 0, h, h, 0); break;
    case 3: v = CNum::surd(2, 0, h, 0, h); break;
    case 4: v = CNum::surd(3, h, 0, 0, h); break;
    case 6: v = CNum(Q(0), Q(1)); break;
    case 8: v = CNum::surd(3, -h, 0, 0, h); break;
    case 9: v = CNum::surd(2, 0, -h, 0, h); break;
    case 10: v = CNum::surd(3, 0, -h, h, 0); break;
    default: return false;
  }
  out = sign > 0 ? v : -v;
  return true;
}

}  // namespace

bool rotation_is_exact(const Q& re, const Q& im) {
  if (im != 0) return false;
  Q r = re;
  r.canonicalize();
  long den = r.get_den().get_si();
  return r.get_den().fits_slong_p() && (den == 1 || den == 2 || den == 3 || den == 4 || den == 6);
}

CNum rotation(const Q& re, const Q& im) {
  if (rotation_is_exact(re, Q(0))) {
    Q r = re;
    r.canonicalize();
    mpz_class m12 = r.get_num() * (12 / r.get_den());
    // exp(-i pi r) = cis(-r pi) = cis(-12 r * pi/12)
    mpz_class mm = -m12;
    mpz_class red = mm % 24;
    CNum out;
    if (exact_cis(static_cast<int>(red.get_si()), out)) return im == 0 ? out : out * CNum::exp_pi(im);
  }
  CNum b = rotation_numeric(re.get_d(), im.get_d());
  long double pi = static_cast<long double>(M_PI);
  long double extra = std::abs(b.approx()) * DBL_EPSILON * pi * (std::fabs(re.get_d()) + std::fabs(im.get_d()));
  return CNum::ball(b.approx().real(), b.approx().imag(), b.radius() + extra);
}

CNum rotation_numeric(long double re, long double im) {
  // exp(-pi i (re + i im)) = exp(pi im) * exp(-pi i re)
  long double pi = static_cast<long double>(M_PI);
  long double scale = std::exp(pi * im);
  long double ang = -pi * std::fmod(re, 2.0L);
  long double c = scale * std::cos(ang), s = scale * std::sin(ang);
  long double rad = scale * kEps * (4 + std::fabs(pi * re) + std::fabs(pi * im));
  return CNum::ball(c, s, rad + LDBL_MIN);
}

QComplex parse_qcomplex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw UsageError("empty complex number");
  QComplex z{Q(0), Q(0)};
  if (s.back() != 'i') {
    z.re = parse_rational(s);
    return z;
  }
  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  size_t split = std::string::npos;
  for (size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string im_part = split == std::string::npos ? body : body.substr(split);
  if (!re_part.empty()) z.re = parse_rational(re_part);
  if (im_part.empty() || im_part == "+")
    z.im = 1;
  else if (im_part == "-")
    z.im = -1;
  else
    z.im = parse_rational(im_part);
  return z;
}

}  // namespace mstab
