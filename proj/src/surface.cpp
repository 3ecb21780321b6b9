#include "moyal/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "moyal/sph_harm.hpp"

namespace moyal {
namespace {

struct Normalized {
  cplx scale;
  WignerCoeffs unit;
};

Normalized normalize(const WignerCoeffs& c) {
  double norm2 = 0.0;
  for (const auto& e : c.entries()) norm2 += std::norm(e.value);
  const cplx v0 = c.entries().front().value;
  const cplx scale = std::sqrt(norm2) * (v0 / std::abs(v0));
  return {scale, c * (1.0 / scale)};
}

void hsv_to_rgb(double h, double& r, double& g, double& b) {
  const double x = 6.0 * (h - std::floor(h));
  const int i = static_cast<int>(x) % 6;
  const double f = x - std::floor(x);
  const double q = 1.0 - f;
  switch (i) {
    case 0: r = 1; g = f; b = 0; break;
    case 1: r = q; g = 1; b = 0; break;
    case 2: r = 0; g = 1; b = f; break;
    case 3: r = 0; g = q; b = 1; break;
    case 4: r = f; g = 0; b = 1; break;
    default: r = 1; g = 0; b = q; break;
  }
}

}  // namespace

WignerCoeffs ProductTerm::display_factor(int k) const {
  const double n = static_cast<double>(factors.size());
  const double mag = std::pow(std::abs(scale), 1.0 / n);
  WignerCoeffs f = factors.at(k) * mag;
  if (k == 0 && std::abs(scale) > 0.0) f = f * (scale / std::abs(scale));
  return f;
}

std::vector<ProductTerm> props_decompose(const WignerCoeffs& w) {
  if (w.empty()) return {};
  const int n = w.n_spins();
  if (n == 1) {
    const Normalized u = normalize(w);
    return {ProductTerm{u.scale, {u.unit}}};
  }
  std::map<int, std::vector<CoeffEntry>> columns;
  for (const auto& e : w.entries()) columns[key_slot(e.key, n - 1, n)].push_back({e.key >> 8, e.value});

  struct Group {
    WignerCoeffs head;
    std::vector<CoeffEntry> tail;
  };
  std::vector<Group> groups;
  for (const auto& [slot, entries] : columns) {
    const WignerCoeffs col(n - 1, w.spin_J(), w.max_rank(), entries);
    if (col.empty()) continue;
    const Normalized u = normalize(col);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return max_abs_diff(g.head, u.unit) < 1e-12; });
    if (it == groups.end()) {
      groups.push_back({u.unit, {}});
      it = groups.end() - 1;
    }
    it->tail.push_back({static_cast<CoeffKey>(slot), u.scale});
  }

  std::vector<ProductTerm> out;
  for (const auto& g : groups) {
    const WignerCoeffs tail(1, w.spin_J(), w.max_rank(), g.tail);
    if (tail.empty()) continue;
    const Normalized t = normalize(tail);
    for (auto& sub : props_decompose(g.head)) {
      sub.scale *= t.scale;
      sub.factors.push_back(t.unit);
      out.push_back(std::move(sub));
    }
  }
  return out;
}

WignerCoeffs expand_terms(const std::vector<ProductTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("no terms to expand");
  const int n = static_cast<int>(terms.front().factors.size());
  const HalfInt J = terms.front().factors.front().spin_J();
  int rank = 0;
  std::vector<CoeffEntry> all;
  for (const auto& t : terms) {
    std::vector<CoeffEntry> cur{{0, t.scale}};
    for (const auto& f : t.factors) {
      rank = std::max(rank, f.max_rank());
      std::vector<CoeffEntry> next;
      for (const auto& a : cur)
        for (const auto& b : f.entries()) next.push_back({(a.key << 8) | b.key, a.value * b.value});
      cur = std::move(next);
    }
    all.insert(all.end(), cur.begin(), cur.end());
  }
  return WignerCoeffs(n, J, rank, std::move(all));
}

WignerCoeffs restrict_to_sphere(const WignerCoeffs& w, int slot, const SphereAngles& others, SurfaceMode mode) {
  const int n = w.n_spins();
  if (slot < 0 || slot >= n) throw std::invalid_argument("slot out of range");
  std::vector<CoeffEntry> out;
  if (mode == SurfaceMode::marginal) {
    const double vol = std::pow(std::sqrt(4.0 * std::numbers::pi), n - 1);
    for (const auto& e : w.entries()) {
      bool rest_zero = true;
      for (int k = 0; k < n; ++k)
        if (k != slot && key_slot(e.key, k, n) != 0) rest_zero = false;
      if (rest_zero) out.push_back({static_cast<CoeffKey>(key_slot(e.key, slot, n)), e.value * vol});
    }
  } else {
    if (static_cast<int>(others.size()) != n - 1) throw std::invalid_argument("need one angle pair per other sphere");
    const int r = w.present_rank();
    const std::size_t D = std::size_t(r + 1) * (r + 1);
    std::vector<cplx> y(D * n);
    for (int k = 0, o = 0; k < n; ++k) {
      if (k == slot) continue;
      sph_harm_all(r, others[o].theta, others[o].phi, y.data() + k * D);
      ++o;
    }
    for (const auto& e : w.entries()) {
      cplx v = e.value;
      for (int k = 0; k < n; ++k)
        if (k != slot) v *= y[k * D + key_slot(e.key, k, n)];
      out.push_back({static_cast<CoeffKey>(key_slot(e.key, slot, n)), v});
    }
  }
  return WignerCoeffs(1, w.spin_J(), w.max_rank(), std::move(out));
}

SampledSurface sample_surface(const WignerCoeffs& w, int slot, int resolution, const SphereAngles& others,
                              SurfaceMode mode) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  const WignerCoeffs f = restrict_to_sphere(w, slot, others, mode);
  SampledSurface s;
  s.resolution = resolution;
  for (int i = 0; i < resolution; ++i) s.theta.push_back(std::numbers::pi * i / (resolution - 1));
  for (int j = 0; j < resolution; ++j) s.phi.push_back(2.0 * std::numbers::pi * j / resolution);
  std::vector<SphereAngles> pts;
  pts.reserve(std::size_t(resolution) * resolution);
  for (double th : s.theta)
    for (double ph : s.phi) pts.push_back({{th, ph}});
  s.values = evaluate_many(f, pts);
  return s;
}

std::string surface_csv(const SampledSurface& s) {
  std::ostringstream out;
  out.precision(17);
  out << "theta,phi,re,im\n";
  const int r = s.resolution;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const cplx v = s.values[std::size_t(i) * r + j];
      out << s.theta[i] << ',' << s.phi[j] << ',' << v.real() << ',' << v.imag() << '\n';
    }
  return out.str();
}

json surface_json(const SampledSurface& s) {
  json re = json::array(), im = json::array();
  for (const cplx& v : s.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"resolution", s.resolution}, {"theta", s.theta}, {"phi", s.phi}, {"re", re}, {"im", im}};
}

std::string surface_obj(const SampledSurface& s) {
  std::ostringstream out;
  out.precision(10);
  const int r = s.resolution;
  out << "# resolution " << r << "\n";
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const cplx v = s.values[std::size_t(i) * r + j];
      const double rad = std::abs(v);
      const double th = s.theta[i], ph = s.phi[j];
      double cr, cg, cb;
      hsv_to_rgb((std::arg(v) + std::numbers::pi) / (2.0 * std::numbers::pi), cr, cg, cb);
      out << "v " << rad * std::sin(th) * std::cos(ph) << ' ' << rad * std::sin(th) * std::sin(ph) << ' '
          << rad * std::cos(th) << ' ' << cr << ' ' << cg << ' ' << cb << '\n';
    }
  auto id = [r](int i, int j) { return i * r + (j % r) + 1; };
  for (int i = 0; i + 1 < r; ++i)
    for (int j = 0; j < r; ++j) {
      out << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << '\n';
      out << "f " << id(i, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << '\n';
    }
  return out.str();
}

json props_to_json(const std::vector<ProductTerm>& terms) {
  json out = json::array();
  for (const auto& t : terms) {
    json factors = json::array();
    for (std::size_t k = 0; k < t.factors.size(); ++k) factors.push_back(coeffs_to_json(t.display_factor(static_cast<int>(k))));
    out.push_back({{"scale_re", t.scale.real()}, {"scale_im", t.scale.imag()}, {"factors", factors}});
  }
  return out;
}

}  // namespace moyal
