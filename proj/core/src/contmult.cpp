#include "latticeprop/contmult.hpp"
#include "latticeprop/errors.hpp"
#include "latticeprop/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace latticeprop {

namespace {

constexpr int kMaxDegree = 600;

void check_args(const std::vector<double>& x) {
  if (x.empty()) throw DimensionError("continuous multinomial needs at least one argument");
  for (double v : x)
    if (!(v >= 0) || !std::isfinite(v)) throw DimensionError("continuous multinomial arguments must be >= 0");
}

// Shell-by-shell table of h[nu][k] = (words of content nu ending in k) / nu!.
// Only the terms with every nu_k >= 1 are kept once a shell is finished.
class SeriesCache {
public:
  struct Shell {
    std::vector<int> nu;     // flattened, l entries per term
    std::vector<double> w;   // f_nu / nu! * prod sqrt(nu_k)
  };

  explicit SeriesCache(int l) : l_(l) {
    shells_.emplace_back();  // degree 0 contributes nothing
  }

  const Shell& shell(int N) {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(shells_.size()) <= N) grow();
    return shells_[N];
  }

private:
  void grow() {
    const int N = static_cast<int>(shells_.size());
    std::map<std::vector<int>, std::vector<double>> next;
    if (N == 1) {
      for (int k = 0; k < l_; ++k) {
        std::vector<int> nu(l_, 0);
        nu[k] = 1;
        std::vector<double> h(l_, 0.0);
        h[k] = 1.0;
        next.emplace(nu, h);
      }
    } else {
      for (const auto& [prev, h] : frontier_) {
        double tot = std::accumulate(h.begin(), h.end(), 0.0);
        for (int k = 0; k < l_; ++k) {
          double from = tot - h[k];
          if (from == 0.0) continue;
          std::vector<int> nu = prev;
          ++nu[k];
          auto& slot = next.try_emplace(nu, std::vector<double>(l_, 0.0)).first->second;
          slot[k] += from / nu[k];
        }
      }
    }
    Shell s;
    for (const auto& [nu, h] : next) {
      if (std::any_of(nu.begin(), nu.end(), [](int v) { return v == 0; })) continue;
      double w = std::accumulate(h.begin(), h.end(), 0.0);
      for (int v : nu) w *= std::sqrt(static_cast<double>(v));
      s.nu.insert(s.nu.end(), nu.begin(), nu.end());
      s.w.push_back(w);
    }
    frontier_ = std::move(next);
    shells_.push_back(std::move(s));
  }

  int l_;
  std::mutex mu_;
  std::deque<Shell> shells_;
  std::map<std::vector<int>, std::vector<double>> frontier_;
};

SeriesCache& series_cache(int l) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SeriesCache>> caches;
  std::lock_guard<std::mutex> lock(mu);
  auto& p = caches[l];
  if (!p) p = std::make_unique<SeriesCache>(l);
  return *p;
}

// log of N^{l/2} (l S)^N / N!, a bound on the shell-N sum
double log_majorant(int l, double S, int N) {
  return 0.5 * l * std::log(static_cast<double>(N)) + N * std::log(l * S) - std::lgamma(N + 1.0);
}

std::vector<std::vector<int>> simplex(int l, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> nu(l, 0);
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == l - 1) {
      nu[k] = left;
      out.push_back(nu);
      return;
    }
    for (int v = left; v >= 0; --v) {
      nu[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, degree);
  return out;
}

double round_half_away(double v) { return std::round(v); }

} // namespace

mpz_class smirnov_frequency_count(const std::vector<int>& nu) {
  for (int v : nu)
    if (v < 0) throw DimensionError("frequency vector entries must be >= 0");
  const int l = static_cast<int>(nu.size());
  int total = std::accumulate(nu.begin(), nu.end(), 0);
  if (total == 0) return 1;
  std::map<std::pair<std::vector<int>, int>, mpz_class> memo;
  // words using the multiset rem whose letter before them is last
  auto go = [&](auto&& self, std::vector<int>& rem, int last, int left) -> mpz_class {
    if (left == 0) return 1;
    auto key = std::pair{rem, last};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    mpz_class s = 0;
    for (int k = 0; k < l; ++k) {
      if (k == last || rem[k] == 0) continue;
      --rem[k];
      s += self(self, rem, k, left - 1);
      ++rem[k];
    }
    memo.emplace(std::move(key), s);
    return s;
  };
  std::vector<int> rem = nu;
  return go(go, rem, -1, total);
}

double cont_multinomial(const std::vector<double>& x, double tol, SeriesInfo* info) {
  check_args(x);
  if (!(tol > 0)) throw DimensionError("tolerance must be positive");
  const int l = static_cast<int>(x.size());
  if (std::any_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
    if (info) *info = {0, 0.0};
    return 0.0;
  }
  const double S = std::accumulate(x.begin(), x.end(), 0.0);
  SeriesCache& cache = series_cache(l);
  std::vector<std::vector<double>> pw(l, std::vector<double>{1.0});
  double sum = 0.0;
  for (int N = l; N <= kMaxDegree; ++N) {
    for (int k = 0; k < l; ++k)
      while (static_cast<int>(pw[k].size()) <= N) pw[k].push_back(pw[k].back() * x[k]);
    const auto& sh = cache.shell(N);
    double c = 0.0;
    for (std::size_t j = 0; j < sh.w.size(); ++j) {
      double term = sh.w[j];
      const int* nu = &sh.nu[j * l];
      for (int k = 0; k < l; ++k) term *= pw[k][nu[k]];
      c += term;
    }
    sum += c;
    double ratio = l * S / (N + 2.0) * std::pow((N + 2.0) / (N + 1.0), 0.5 * l);
    double tail = 2.0 * std::exp(log_majorant(l, S, N + 1));
    double scale = std::max(1.0, std::abs(sum));
    if (ratio <= 0.5 && tail <= tol * scale) {
      if (info) *info = {N, tail};
      return sum;
    }
  }
  double tail = 2.0 * std::exp(log_majorant(l, S, kMaxDegree + 1));
  throw TruncationError("continuous multinomial series did not reach the tolerance by degree " +
                            std::to_string(kMaxDegree),
                        tail);
}

double cont_binomial(double x, double s) {
  if (!(s >= 0) || !(s <= x)) throw DimensionError("cont_binomial needs 0 <= s <= x");
  const double u = s, v = x - s;
  // p_n = (u v)^n / (n! (n+1)!)
  double p = 1.0, sum = 0.0;
  for (int n = 0; n < 4000; ++n) {
    double nn = n;
    double term = p * (std::sqrt(nn * (nn + 1)) * (u + v) + (2 * nn + 2) * nn);
    sum += term;
    if (n > 0 && nn * nn > u * v && term <= 1e-17 * std::max(1.0, sum)) return sum;
    p *= u * v / ((nn + 1) * (nn + 2));
  }
  throw TruncationError("cont_binomial did not converge", p);
}

double TaylorTable::at(const std::vector<int>& nu) const {
  auto it = coeffs_.find(nu);
  return it == coeffs_.end() ? 0.0 : it->second;
}

double TaylorTable::bound_constant(int l) { return std::pow(static_cast<double>(l), l); }

double TaylorTable::bound_margin() const {
  double worst = -INFINITY;
  const double logC = std::log(bound_constant(l_));
  for (const auto& [nu, a] : coeffs_) {
    if (a == 0.0) continue;
    double P = 1.0, logfact = 0.0;
    for (int v : nu)
      if (v > 0) {
        P *= v;
        logfact += std::lgamma(v + 1.0);
      }
    worst = std::max(worst, std::log(std::abs(a)) + logfact - P * logC);
  }
  return worst;
}

double TaylorTable::evaluate(const std::vector<double>& x) const {
  check_args(x);
  if (static_cast<int>(x.size()) != l_) throw DimensionError("argument count differs from the table");
  if (std::any_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) return 0.0;
  // shells summed smallest first for a stable order
  std::vector<double> shell(max_degree_ + 1, 0.0);
  for (const auto& [nu, a] : coeffs_) {
    if (std::any_of(nu.begin(), nu.end(), [](int v) { return v == 0; })) continue;
    double term = a;
    int deg = 0;
    for (int k = 0; k < l_; ++k) {
      term *= std::sqrt(static_cast<double>(nu[k])) * std::pow(x[k], nu[k]);
      deg += nu[k];
    }
    shell[deg] += term;
  }
  double sum = 0.0;
  for (double s : shell) sum += s;
  return sum;
}

TaylorTable taylor_table(int l, int max_degree) {
  if (l < 3) throw DimensionError("taylor_table needs l >= 3; use cont_binomial for two letters");
  if (max_degree < 0 || max_degree > 160) throw CapacityError("taylor_table degree cap is 160");
  TaylorTable t;
  t.l_ = l;
  t.max_degree_ = max_degree;
  auto& a = t.coeffs_;
  for (int deg = 0; deg <= max_degree; ++deg) {
    for (const auto& nu : simplex(l, deg)) {
      std::vector<int> supp;
      bool unit = true;
      for (int k = 0; k < l; ++k) {
        if (nu[k] > 0) supp.push_back(k);
        if (nu[k] > 1) unit = false;
      }
      double v = unit ? 1.0 : 0.0;
      const int ns = static_cast<int>(supp.size());
      for (unsigned mask = 1; mask < (1u << ns); ++mask) {
        int size = std::popcount(mask);
        if (size < 2) continue;
        std::vector<int> lower = nu;
        double den = 1.0;
        for (int j = 0; j < ns; ++j)
          if (mask & (1u << j)) {
            --lower[supp[j]];
            den *= nu[supp[j]];
          }
        auto it = a.find(lower);
        if (it != a.end()) v += (size - 1) * it->second / den;
      }
      a.emplace(nu, v);
    }
  }
  return t;
}

double gaussian_asymptotic(const std::vector<double>& x) {
  check_args(x);
  const double l = static_cast<double>(x.size());
  const double S = std::accumulate(x.begin(), x.end(), 0.0);
  if (S <= 0) throw DimensionError("gaussian_asymptotic needs positive arguments");
  double q = 0;
  for (double v : x) q += (v - S / l) * (v - S / l);
  double logv = (S + l / 2) * std::log(l) - 0.5 * (l - 1) * std::log(2 * std::numbers::pi * S) - l / (2 * S) * q;
  return std::exp(logv);
}

double gaussian_entropy_form(const std::vector<double>& x) {
  check_args(x);
  const double l = static_cast<double>(x.size());
  const double S = std::accumulate(x.begin(), x.end(), 0.0);
  if (S <= 0) throw DimensionError("gaussian_entropy_form needs positive arguments");
  double H = 0;
  for (double v : x)
    if (v > 0) H -= v * std::log(v / S);
  double logv = H + 0.5 * l * std::log(l) - 0.5 * (l - 1) * std::log(2 * std::numbers::pi * S);
  return std::exp(logv);
}

DiscToCont disc_to_cont_check(const std::vector<double>& x, int m) {
  check_args(x);
  if (m < 1) throw DimensionError("scale m must be positive");
  const int l = static_cast<int>(x.size());
  if (l < 2) throw DimensionError("disc_to_cont_check needs at least two arguments");
  std::vector<long> M(l);
  long total = 0;
  for (int k = 0; k < l; ++k) {
    M[k] = static_cast<long>(round_half_away(m * x[k]));
    total += M[k];
  }
  std::vector<long> C(l, total / l);
  DiscToCont r;
  const double S = std::accumulate(x.begin(), x.end(), 0.0);
  std::vector<double> centred(l, S / l);
  r.continuous_ratio = cont_multinomial(x) / cont_multinomial(centred);
  if (std::any_of(M.begin(), M.end(), [](long v) { return v == 0; })) {
    r.discrete_ratio = 0;
    r.deviation = std::abs(r.continuous_ratio);
    return r;
  }

  // Segment decomposition: a monotone path with nu_k runs of letter k is
  // one of f_nu run orders times prod C(M_k-1, nu_k-1) run lengths. The
  // m^{l-|nu|} reweighting is applied as m^{K-|nu|} to stay in integers.
  const int K = static_cast<int>(std::min<long>(80, total));
  mpz_class mm = m;
  std::vector<mpz_class> mpow(K + 1, 1);
  for (int i = 1; i <= K; ++i) mpow[i] = mpow[i - 1] * mm;
  auto binom = [](long n, long k) {
    mpz_class b;
    if (k < 0 || k > n) return mpz_class(0);
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
  };
  mpz_class num = 0, den = 0;
  std::map<std::vector<int>, std::vector<mpz_class>> shell;
  for (int k = 0; k < l; ++k) {
    std::vector<int> nu(l, 0);
    nu[k] = 1;
    std::vector<mpz_class> f(l, 0);
    f[k] = 1;
    shell.emplace(nu, f);
  }
  for (int N = 1; N <= K; ++N) {
    if (N > 1) {
      std::map<std::vector<int>, std::vector<mpz_class>> next;
      for (const auto& [prev, f] : shell) {
        mpz_class tot = 0;
        for (const auto& v : f) tot += v;
        for (int k = 0; k < l; ++k) {
          mpz_class from = tot - f[k];
          if (from == 0) continue;
          std::vector<int> nu = prev;
          ++nu[k];
          auto& slot = next.try_emplace(nu, std::vector<mpz_class>(l, 0)).first->second;
          slot[k] += from;
        }
      }
      shell = std::move(next);
    }
    for (const auto& [nu, f] : shell) {
      if (std::any_of(nu.begin(), nu.end(), [](int v) { return v == 0; })) continue;
      mpz_class words = 0;
      for (const auto& v : f) words += v;
      mpz_class a = words * mpow[K - N], b = a;
      for (int k = 0; k < l; ++k) {
        a *= binom(M[k] - 1, nu[k] - 1);
        b *= binom(C[k] - 1, nu[k] - 1);
      }
      num += a;
      den += b;
    }
  }
  r.discrete_ratio = mpq_class(num, den).get_d();
  r.deviation = std::abs(r.discrete_ratio - r.continuous_ratio);
  return r;
}

double k1_cont_integrand(double t, double x, double I) {
  double ax = std::abs(x);
  double a = 0.5 * (I - ax), b = 0.5 * (I + ax), c = t - I;
  if (a <= 0 || b <= 0 || c <= 0) return 0.0;
  return cont_multinomial({a, b, c}, 1e-12);
}

double k1_cont_peak_location(double t, double x) {
  return (4 * t - std::sqrt(4 * t * t - 3 * x * x)) / 3;
}

PeakReport k1_cont_peak(double t, double x, int n) {
  if (n < 2) throw DimensionError("peak search needs at least two cells");
  PeakReport r;
  double lo = std::abs(x), h = (t - lo) / n;
  r.cell = h;
  double bestv = -1;
  int bj = 0;
  for (int j = 0; j <= n; ++j) {
    double v = k1_cont_integrand(t, x, lo + j * h);
    if (v > bestv) {
      bestv = v;
      bj = j;
    }
  }
  r.node = lo + bj * h;
  double a = lo + std::max(0, bj - 1) * h, b = lo + std::min(n, bj + 1) * h;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = k1_cont_integrand(t, x, c), fd = k1_cont_integrand(t, x, d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = k1_cont_integrand(t, x, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = k1_cont_integrand(t, x, d);
    }
  }
  r.refined = 0.5 * (a + b);
  return r;
}

std::vector<Amplitude> k1_cont_profile(double t, const std::vector<double>& xs, double m, int quad_points) {
  if (!(t > 0)) throw DimensionError("profile needs t > 0");
  if (quad_points < 64) throw DimensionError("quad_points must be >= 64");
  auto zero = simpson([&](double I) { return k1_cont_integrand(t, 0.0, I); }, 0.0, t, quad_points);
  if (!zero.converged) throw QuadratureError("normalization integral did not converge", zero.change);
  std::vector<Amplitude> out;
  out.reserve(xs.size());
  for (double x : xs) {
    double ax = std::abs(x);
    if (ax >= t) {
      out.emplace_back(0.0, 0.0);
      continue;
    }
    auto q = simpson_complex(
        [&](double I) {
          return std::polar(k1_cont_integrand(t, ax, I), m * (t - I));
        },
        ax, t, quad_points);
    if (!q.converged) throw QuadratureError("profile quadrature did not converge at x = " + std::to_string(x), q.change);
    out.push_back(q.value / zero.value);
  }
  return out;
}

Amplitude k1_cont_highd(double t, const std::vector<double>& x, double m, int quad_points) {
  const int d = static_cast<int>(x.size());
  if (d < 2 || d > 3) throw DimensionError("k1_cont_highd supports d = 2 or 3");
  if (!(t > 0)) throw DimensionError("needs t > 0");
  if (quad_points < 8) throw DimensionError("quad_points must be >= 8");

  // integrand at fixed I: nested Simpson over I_1..I_{d-1}, I_d from the constraint
  auto inner = [&](const std::vector<double>& ax, double I) {
    double l1 = 0;
    for (double v : ax) l1 += v;
    double s = 0.5 * (I + l1);
    std::vector<double> Ii(d);
    auto rec = [&](auto&& self, int i, double used) -> double {
      if (i == d - 1) {
        Ii[i] = s - used;
        std::vector<double> args;
        for (int k = 0; k < d; ++k) args.push_back(Ii[k]);
        for (int k = 0; k < d; ++k) args.push_back(Ii[k] - ax[k]);
        args.push_back(t - I);
        for (double v : args)
          if (v <= 0) return 0.0;
        return cont_multinomial(args, 1e-10);
      }
      double lo = ax[i];
      double hi = s;
      for (int j = 0; j < i; ++j) hi -= ax[j];
      if (hi <= lo) return 0.0;
      return simpson_fixed(
          [&](double v) {
            Ii[i] = v;
            return self(self, i + 1, used + v);
          },
          lo, hi, quad_points);
    };
    return rec(rec, 0, 0.0);
  };
  std::vector<double> ax(d), zero(d, 0.0);
  double l1 = 0;
  for (int i = 0; i < d; ++i) {
    ax[i] = std::abs(x[i]);
    l1 += ax[i];
  }
  auto z = simpson([&](double I) { return inner(zero, I); }, 0.0, t, quad_points, 1e-4, 256);
  if (!z.converged) throw QuadratureError("normalization integral did not converge", z.change);
  if (l1 >= t) return {0.0, 0.0};
  auto q = simpson_complex([&](double I) { return std::polar(inner(ax, I), m * (t - I)); }, l1, t, quad_points, 1e-4, 256);
  if (!q.converged) throw QuadratureError("high-dimensional quadrature did not converge", q.change);
  return q.value / z.value;
}

double desitter_cont(const std::vector<double>& dx, double dt) {
  if (dx.empty()) throw DimensionError("need at least one spatial coordinate");
  if (!(dt > 0)) throw DimensionError("needs dt > 0");
  std::vector<double> a;
  double l1 = 0;
  for (double v : dx) {
    a.push_back(std::abs(v));
    l1 += std::abs(v);
  }
  if (l1 > dt * (1 + 1e-12)) throw DimensionError("sum of |dx_i| exceeds dt");
  std::vector<double> c(dx.size(), dt / static_cast<double>(dx.size()));
  return cont_multinomial(a) / cont_multinomial(c);
}

SplittingReport splitting_check(const std::vector<double>& x, int quad_points, int levels) {
  check_args(x);
  const int l = static_cast<int>(x.size());
  if (l < 3) throw DimensionError("splitting_check needs l >= 3");
  SplittingReport r;
  r.lhs = cont_multinomial(x);
  const double lo = x[l - 2], hi = x[l - 2] + x[l - 1];
  std::vector<double> head(x.begin(), x.end() - 2);
  auto integrand = [&](double I) {
    std::vector<double> first = head;
    first.push_back(I);
    return cont_multinomial(first, 1e-13) * cont_binomial(I, x[l - 2]);
  };
  int n = quad_points;
  for (int j = 0; j < levels; ++j, n *= 2) {
    double rhs = hi > lo ? simpson_fixed(integrand, lo, hi, n) : 0.0;
    r.study.emplace_back(n, std::abs(r.lhs - rhs));
    r.rhs = rhs;
  }
  r.residual = r.study.back().second;
  return r;
}

} // namespace latticeprop
