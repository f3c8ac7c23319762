#include "output.hpp"

#include "latticeprop/latticeprop.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <thread>

using namespace latticeprop;
using lpcli::Cell;
using lpcli::Table;

namespace {

int threads = 1;

// results land by index, so order never depends on scheduling
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, F&& f) {
  std::vector<R> out(n);
  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), std::max<std::size_t>(n, 1));
  if (k <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errs(k);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < k; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += k) out[i] = f(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

struct SpaceArgs {
  std::string name = "free";
  int d = 1;
  std::vector<coord_t> extents;
  coord_t c = 0;

  SpaceSpec build() const {
    auto ext = [&](int dim) {
      std::vector<coord_t> e = extents;
      if (e.empty()) throw DimensionError("--extent is required for " + name);
      if (e.size() == 1) e.assign(static_cast<std::size_t>(dim), e[0]);
      if (static_cast<int>(e.size()) != dim) throw DimensionError("--extent needs 1 or d values");
      return e;
    };
    SpaceSpec s;
    if (name == "free")
      s = Free{d, extents.empty() ? std::nullopt : std::optional(ext(d))};
    else if (name == "torus")
      s = Torus{d, ext(d)};
    else if (name == "klein") {
      auto e = ext(2);
      s = Klein{e[0], e[1]};
    } else if (name == "desitter")
      s = TropicalDeSitter{d, c};
    else
      throw DimensionError("unknown space " + name);
    validate(s);
    return s;
  }

  void record(nlohmann::ordered_json& p) const {
    p["space"] = name;
    p["d"] = name == "klein" ? 2 : d;
    if (!extents.empty()) p["extent"] = extents;
    if (name == "desitter") p["c"] = c;
  }
};

void add_space(CLI::App* cmd, SpaceArgs& s) {
  cmd->add_option("--space", s.name, "free, torus, klein or desitter")
      ->check(CLI::IsMember({"free", "torus", "klein", "desitter"}));
  cmd->add_option("--d", s.d, "spatial dimension")->check(CLI::Range(1, 3));
  cmd->add_option("--extent", s.extents, "half widths L (one value or one per axis)")->delimiter(',');
  cmd->add_option("--c", s.c, "de-Sitter level");
}

// spatial points of the fundamental domain, or the l1 ball of radius r
std::vector<std::vector<coord_t>> domain(const SpaceSpec& s, coord_t r) {
  int d = dimension(s);
  std::vector<coord_t> lo(d, -r), hi(d, r);
  if (const auto* t = std::get_if<Torus>(&s))
    for (int i = 0; i < d; ++i) lo[i] = -t->extents[i] + 1, hi[i] = t->extents[i];
  if (const auto* k = std::get_if<Klein>(&s)) lo = {-k->L1 + 1, -k->L2 + 1}, hi = {k->L1, k->L2};
  if (const auto* f = std::get_if<Free>(&s); f && f->extents)
    for (int i = 0; i < d; ++i) lo[i] = std::max(lo[i], -(*f->extents)[i]), hi[i] = std::min(hi[i], (*f->extents)[i]);
  bool bounded = !std::holds_alternative<Free>(s) && !std::holds_alternative<TropicalDeSitter>(s);
  std::vector<std::vector<coord_t>> out;
  std::vector<coord_t> x = lo;
  while (true) {
    coord_t l1 = 0;
    for (auto v : x) l1 += std::llabs(v);
    if (bounded || l1 <= r) out.push_back(x);
    int i = d - 1;
    while (i >= 0 && x[i] == hi[i]) x[i] = lo[i], --i;
    if (i < 0) break;
    ++x[i];
  }
  return out;
}

LatticePoint start_point(const SpaceSpec& s) {
  int d = dimension(s);
  LatticePoint p{std::vector<coord_t>(d, 0), 0};
  if (const auto* ds = std::get_if<TropicalDeSitter>(&s)) {
    if (ds->c >= 0)
      p.spatial[0] = ds->c;
    else
      p.time = ds->c;
  }
  return p;
}

std::vector<std::string> coord_columns(int d, const char* base) {
  if (d == 1) return {base};
  std::vector<std::string> c;
  for (int i = 1; i <= d; ++i) c.push_back(std::string(base) + std::to_string(i));
  return c;
}

// ---- commands ----

Table cmd_triples(std::int64_t max_hyp) {
  Table t;
  t.command = "triples";
  t.params["max_hyp"] = max_hyp;
  t.columns = {"leg_x", "leg_i", "hyp"};
  for (const auto& p : primitive_triples(max_hyp)) t.rows.push_back({p.leg_x, p.leg_i, p.hyp});
  t.x_column = "leg_x";
  t.y_columns = {"leg_i"};
  t.x_label = "leg_x";
  t.y_label = "leg_i";
  return t;
}

Table cmd_metric(int n, coord_t tmax) {
  Table t;
  t.command = "metric";
  t.params["n"] = n;
  t.params["t"] = tmax;
  t.columns = {"t", "x", "minkowski", "polygonal", "taxicab"};
  auto axes = axes_of_symmetry(n, 1);
  auto blocks = parallel_map<std::vector<std::vector<Cell>>>(static_cast<std::size_t>(tmax + 1), [&](std::size_t i) {
    coord_t tt = static_cast<coord_t>(i);
    std::vector<std::vector<Cell>> rows;
    for (coord_t x = -tt; x <= tt; ++x) {
      LatticePoint a{{0}, 0}, b{{x}, tt};
      rows.push_back({tt, x, *minkowski_interval(a, b).value, *polygonal_interval(axes, a, b).value,
                      *taxicab_interval(a, b).value});
    }
    return rows;
  });
  for (auto& b : blocks)
    for (auto& r : b) t.rows.push_back(std::move(r));
  t.x_column = "x";
  t.y_columns = {"minkowski", "polygonal"};
  t.x_label = "x";
  t.y_label = "interval";
  return t;
}

Table cmd_paths(const SpaceArgs& sa, int n, coord_t tt) {
  auto space = sa.build();
  int d = dimension(space);
  auto axes = std::holds_alternative<TropicalDeSitter>(space) ? null_axes(d) : axes_of_symmetry(n, d);
  auto src = start_point(space);
  Table t;
  t.command = "paths";
  sa.record(t.params);
  t.params["n"] = n;
  t.params["t"] = tt;
  t.columns = coord_columns(d, "x");
  t.columns.push_back("count");
  coord_t reach = tt * axes.max_time();
  for (const auto& s : axes.steps())
    for (auto v : s.dx) reach = std::max<coord_t>(reach, std::llabs(v) * tt);
  std::vector<std::vector<coord_t>> pts;
  for (auto& x : domain(space, reach + std::llabs(sa.c))) {
    LatticePoint y{x, src.time + tt};
    if (contains(space, y)) pts.push_back(x);
  }
  auto counts = parallel_map<mpz_class>(pts.size(), [&](std::size_t i) {
    return path_count(space, src, {pts[i], src.time + tt}, axes);
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (counts[i] == 0) continue;
    std::vector<Cell> r(pts[i].begin(), pts[i].end());
    r.push_back(counts[i].get_str());
    t.rows.push_back(std::move(r));
  }
  t.x_column = t.columns[0];
  t.y_columns = {"count"};
  t.x_label = t.columns[0];
  t.y_label = "paths";
  return t;
}

struct PropagateArgs {
  SpaceArgs space;
  int n = 1;
  double mass = 1.0;
  double t = 1.0;
  std::vector<double> x;
  bool profile = false;
  bool feynman = false;
  bool continuum = false;
  int refine = 1;
  int quad = 64;
};

Amplitude discrete_value(const SpaceSpec& s, int n, bool feynman, const LatticePoint& src, const LatticePoint& dst,
                         double m) {
  LatticePoint delta = dst - src;
  return std::visit(
      [&](const auto& sp) -> Amplitude {
        using S = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<S, Free>) {
          if (feynman) {
            if (sp.d != 1) throw DimensionError("the feynman variant needs d = 1");
            return kn_feynman(n, delta, m);
          }
          if (n == 1) return k1_free(sp.d, delta, m);
          if (sp.d != 1) throw UnsupportedAxesError("n >= 2 needs d = 1");
          return kn_free(n, delta, m);
        } else if constexpr (std::is_same_v<S, TropicalDeSitter>) {
          return Amplitude(k1_desitter(sp, src, dst).get_d());
        } else {
          if (n != 1 || feynman) throw UnsupportedAxesError("quotient spaces use n = 1, standard variant");
          if constexpr (std::is_same_v<S, Torus>)
            return k1_torus(sp, src, dst, m);
          else
            return k1_klein(sp, src, dst, m);
        }
      },
      s);
}

Table cmd_propagate(const PropagateArgs& a) {
  auto space = a.space.build();
  int d = dimension(space);
  Table t;
  t.command = "propagate";
  a.space.record(t.params);
  t.params["n"] = a.n;
  t.params["mass"] = a.mass;
  t.params["t"] = a.t;
  t.params["refine"] = a.refine;
  t.params["profile"] = a.profile;
  t.params["feynman"] = a.feynman;
  t.params["continuum"] = a.continuum;
  if (!a.profile) t.params["x"] = a.x;
  t.columns = coord_columns(d, "x");
  for (const char* c : {"re", "im", "mag"}) t.columns.push_back(c);
  const double r = a.refine;

  auto emit = [&](const std::vector<std::vector<double>>& xs, const std::vector<Amplitude>& vals) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::vector<Cell> row(xs[i].begin(), xs[i].end());
      row.push_back(vals[i].real());
      row.push_back(vals[i].imag());
      row.push_back(std::abs(vals[i]));
      t.rows.push_back(std::move(row));
    }
  };

  if (a.continuum) {
    t.params["quad"] = a.quad;
    if (!std::holds_alternative<Free>(space)) throw UnsupportedSpaceError("continuum profiles need free space");
    std::vector<std::vector<double>> xs;
    if (a.profile) {
      if (d != 1) throw DimensionError("continuum --profile is one dimensional; pass --x for d = 2, 3");
      coord_t T = std::llround(a.t * r);
      for (coord_t j = -T + 1; j < T; ++j) xs.push_back({j / r});
    } else {
      if (static_cast<int>(a.x.size()) != d) throw DimensionError("--x needs d values");
      xs.push_back(a.x);
    }
    std::vector<Amplitude> vals;
    if (d == 1) {
      auto flat = parallel_map<Amplitude>(xs.size(), [&](std::size_t i) {
        return k1_cont_profile(a.t, {xs[i][0]}, a.mass, a.quad)[0];
      });
      vals = flat;
    } else {
      vals = {k1_cont_highd(a.t, xs[0], a.mass, std::max(8, a.quad / 2))};
    }
    emit(xs, vals);
  } else {
    if (a.refine < 1) throw DimensionError("--refine must be >= 1");
    coord_t T = std::llround(a.t * r);
    if (T < 0) throw ReversedTimeError("t must be >= 0");
    double m = a.mass / r;
    auto src = start_point(space);
    std::vector<std::vector<coord_t>> pts;
    if (a.profile) {
      coord_t reach = T;
      if (a.n > 1) reach = T;  // every axis step has |dx| <= dt
      for (auto& x : domain(space, reach + std::llabs(a.space.c)))
        if (contains(space, {x, src.time + T})) pts.push_back(x);
    } else {
      if (static_cast<int>(a.x.size()) != d) throw DimensionError("--x needs d values");
      std::vector<coord_t> x;
      for (double v : a.x) x.push_back(std::llround(v * r));
      pts.push_back(x);
    }
    auto vals = parallel_map<Amplitude>(pts.size(), [&](std::size_t i) {
      LatticePoint dst{pts[i], src.time + T};
      if (std::holds_alternative<TropicalDeSitter>(space)) {
        coord_t l1 = 0;
        for (std::size_t k = 0; k < pts[i].size(); ++k) l1 += std::llabs(pts[i][k] - src.spatial[k]);
        if (T == 0 || l1 != T) return Amplitude(0);
      }
      return discrete_value(space, a.n, a.feynman, src, dst, m);
    });
    std::vector<std::vector<double>> xs;
    for (auto& p : pts) {
      std::vector<double> v;
      for (auto c : p) v.push_back(c / r);
      xs.push_back(v);
    }
    emit(xs, vals);
  }
  t.x_column = t.columns[0];
  t.y_columns = {"re", "im", "mag"};
  t.x_label = a.refine > 1 || a.continuum ? "x (physical)" : "x (lattice)";
  t.y_label = "amplitude";
  return t;
}

Table cmd_contmult(const std::vector<double>& x, double tol, int disc_m, bool split) {
  Table t;
  t.command = "contmult";
  t.params["args"] = x;
  t.params["tol"] = tol;
  t.columns = {"quantity", "value"};
  SeriesInfo info;
  double v = cont_multinomial(x, tol, &info);
  t.rows.push_back({std::string("series"), v});
  t.rows.push_back({std::string("series_degree"), static_cast<long long>(info.degree)});
  t.rows.push_back({std::string("series_tail"), info.tail});
  if (x.size() == 2) t.rows.push_back({std::string("binomial"), cont_binomial(x[0] + x[1], x[1])});
  if (x.size() >= 3) {
    int deg = x.size() == 3 ? 80 : 40;
    t.rows.push_back({std::string("taylor"), taylor_table(static_cast<int>(x.size()), deg).evaluate(x)});
  }
  bool positive = std::all_of(x.begin(), x.end(), [](double v) { return v > 0; });
  if (positive) {
    t.rows.push_back({std::string("gaussian"), gaussian_asymptotic(x)});
    t.rows.push_back({std::string("entropy_form"), gaussian_entropy_form(x)});
  }
  if (disc_m > 0) {
    t.params["disc_m"] = disc_m;
    auto dc = disc_to_cont_check(x, disc_m);
    t.rows.push_back({std::string("discrete_ratio"), dc.discrete_ratio});
    t.rows.push_back({std::string("continuous_ratio"), dc.continuous_ratio});
    t.rows.push_back({std::string("disc_to_cont_deviation"), dc.deviation});
  }
  if (split) {
    t.params["splitting"] = true;
    auto s = splitting_check(x);
    t.rows.push_back({std::string("splitting_lhs"), s.lhs});
    t.rows.push_back({std::string("splitting_rhs"), s.rhs});
    t.rows.push_back({std::string("splitting_residual"), s.residual});
  }
  t.x_column = "value";
  t.y_columns = {"value"};
  return t;
}

Table cmd_converge(coord_t tt, const std::vector<std::string>& pairs, double m, coord_t grid_max) {
  Table t;
  t.command = "converge";
  t.params["t"] = tt;
  t.params["pairs"] = pairs;
  t.params["mass"] = m;
  if (grid_max < 0) grid_max = tt;
  t.params["grid_max"] = grid_max;
  std::vector<coord_t> grid;
  for (coord_t x = -grid_max; x <= grid_max; ++x) grid.push_back(x);
  std::vector<std::pair<int, int>> pq;
  for (const auto& s : pairs) {
    auto c = s.find(':');
    if (c == std::string::npos) throw DimensionError("pairs look like p:q");
    pq.emplace_back(std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1)));
  }
  auto reps = parallel_map<CauchyReport>(pq.size(), [&](std::size_t i) {
    return cauchy_diagnostic(pq[i].first, pq[i].second, tt, grid, m);
  });
  t.columns = {"p", "q", "min_pq", "value", "argmax"};
  for (const auto& r : reps) t.rows.push_back({r.p, r.q, r.min_pq, r.value, r.argmax});
  t.x_column = "min_pq";
  t.y_columns = {"value"};
  t.x_label = "min(p, q)";
  t.y_label = "sup difference";
  return t;
}

Table cmd_coulomb(double xq, double m, double tt, int refine, double coupling) {
  Table t;
  t.command = "coulomb";
  t.params["xq"] = xq;
  t.params["mass"] = m;
  t.params["t"] = tt;
  t.params["refine"] = refine;
  t.params["coupling"] = coupling;
  PotentialSpec spec{xq, coupling};
  auto both = parallel_map<std::vector<ProfilePoint>>(2, [&](std::size_t i) {
    return i == 0 ? interacting_profile(refine, tt, m, spec) : free_profile(refine, tt, m);
  });
  const auto& c = both[0];
  const auto& f = both[1];
  t.columns = {"lattice_x", "x", "re", "im", "mag", "free_mag"};
  for (std::size_t i = 0; i < c.size(); ++i)
    t.rows.push_back({c[i].lattice_x, c[i].x, c[i].value.real(), c[i].value.imag(), std::abs(c[i].value),
                      std::abs(f[i].value)});
  t.params["mean_position"] = std::stod(lpcli::number(mean_position(c)));
  t.params["free_mean_position"] = std::stod(lpcli::number(mean_position(f)));
  t.x_column = "x";
  t.y_columns = {"mag", "free_mag"};
  t.x_label = "x (light-seconds)";
  t.y_label = "|K|";
  return t;
}

int default_threads() {
  if (const char* e = std::getenv("LATTICEPROP_THREADS")) {
    int v = std::atoi(e);
    if (v >= 1) return v;
  }
  return 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice path propagators and continuous multinomials"};
  app.require_subcommand(1);
  std::string format = "csv", output = "-";
  threads = default_threads();
  auto common = [&](CLI::App* c) {
    c->add_option("--format", format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
    c->add_option("--output,-o", output, "output file, - for stdout");
    c->add_option("--threads", threads, "worker threads (default $LATTICEPROP_THREADS or 1)")->check(CLI::PositiveNumber);
  };

  Table result;
  std::function<Table()> run;

  std::int64_t max_hyp = 0;
  auto* tri = app.add_subcommand("triples", "primitive Pythagorean triples");
  tri->add_option("--max-hyp", max_hyp, "largest hypotenuse")->required()->check(CLI::PositiveNumber);
  common(tri);
  tri->callback([&] { run = [&] { return cmd_triples(max_hyp); }; });

  int metric_n = 1;
  coord_t metric_t = 10;
  auto* met = app.add_subcommand("metric", "minkowski, polygonal and taxicab intervals on a grid");
  met->add_option("--n", metric_n, "polygon order")->check(CLI::Range(1, 1000));
  met->add_option("--t", metric_t, "largest time")->check(CLI::Range(0, 2000));
  common(met);
  met->callback([&] { run = [&] { return cmd_metric(metric_n, metric_t); }; });

  SpaceArgs path_space;
  int path_n = 1;
  coord_t path_t = 4;
  auto* pth = app.add_subcommand("paths", "path counts to every endpoint at time t");
  add_space(pth, path_space);
  pth->add_option("--n", path_n, "axes order")->check(CLI::Range(1, 1000));
  pth->add_option("--t", path_t, "time span")->check(CLI::Range(0, 400));
  common(pth);
  pth->callback([&] { run = [&] { return cmd_paths(path_space, path_n, path_t); }; });

  PropagateArgs pa;
  auto* prop = app.add_subcommand("propagate", "discrete or continuum propagator");
  add_space(prop, pa.space);
  prop->add_option("--n", pa.n, "axes order")->check(CLI::Range(1, 50));
  prop->add_option("--mass", pa.mass, "mass");
  prop->add_option("--t", pa.t, "time (physical when --refine > 1)")->check(CLI::NonNegativeNumber);
  prop->add_option("--x", pa.x, "endpoint (comma separated)")->delimiter(',');
  prop->add_flag("--profile", pa.profile, "every endpoint at time t");
  prop->add_flag("--feynman", pa.feynman, "signed proper lengths");
  prop->add_flag("--continuum", pa.continuum, "continuous multinomial propagator");
  prop->add_option("--refine", pa.refine, "lattice refinement")->check(CLI::Range(1, 4096));
  prop->add_option("--quad", pa.quad, "quadrature points (continuum)")->check(CLI::Range(8, 1 << 14));
  common(prop);
  prop->callback([&] { run = [&] { return cmd_propagate(pa); }; });

  std::vector<double> cm_args;
  double cm_tol = 1e-12;
  int cm_disc = 0;
  bool cm_split = false;
  auto* cm = app.add_subcommand("contmult", "continuous multinomial by every route");
  cm->add_option("--args", cm_args, "arguments")->required()->delimiter(',');
  cm->add_option("--tol", cm_tol, "series tolerance")->check(CLI::PositiveNumber);
  cm->add_option("--disc", cm_disc, "also run the discrete ratio check at this scale")->check(CLI::NonNegativeNumber);
  cm->add_flag("--splitting", cm_split, "also run the splitting check");
  common(cm);
  cm->callback([&] { run = [&] { return cmd_contmult(cm_args, cm_tol, cm_disc, cm_split); }; });

  coord_t cv_t = 6, cv_grid = -1;
  double cv_mass = 1.0;
  std::vector<std::string> cv_pairs{"2:5", "5:13"};
  auto* cv = app.add_subcommand("converge", "sup differences between normalized propagators");
  cv->add_option("--t", cv_t, "time")->check(CLI::Range(1, 64));
  cv->add_option("--pairs", cv_pairs, "p:q pairs")->delimiter(',');
  cv->add_option("--mass", cv_mass, "mass");
  cv->add_option("--grid-max", cv_grid, "grid is |x| <= this (default t)");
  common(cv);
  cv->callback([&] { run = [&] { return cmd_converge(cv_t, cv_pairs, cv_mass, cv_grid); }; });

  double cq = 1.0, cmass = 1.0, ct = 2.0, ccoup = 1.0;
  int crefine = 24;
  auto* cl = app.add_subcommand("coulomb", "propagator in an attractive |x - xq| well");
  cl->add_option("--xq", cq, "charge position");
  cl->add_option("--mass", cmass, "mass");
  cl->add_option("--t", ct, "time")->check(CLI::NonNegativeNumber);
  cl->add_option("--refine", crefine, "lattice refinement")->check(CLI::Range(1, 512));
  cl->add_option("--coupling", ccoup, "potential strength");
  common(cl);
  cl->callback([&] { run = [&] { return cmd_coulomb(cq, cmass, ct, crefine, ccoup); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string body;
  try {
    result = run();
    if (format == "json")
      body = lpcli::render_json(result);
    else if (format == "svg")
      body = lpcli::render_svg(result);
    else
      body = lpcli::render_csv(result);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << " (bound " << e.bound() << ")\n";
    return 3;
  } catch (const QuadratureError& e) {
    std::cerr << "error: " << e.what() << " (change " << e.change() << ")\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (output == "-") {
      std::cout << body;
      std::cout.flush();
      if (!std::cout) throw lpcli::IoError("write to stdout failed");
    } else {
      lpcli::write_atomic(output, body);
    }
  } catch (const lpcli::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
