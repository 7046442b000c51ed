#include "rootlab/families.hpp"

#include <limits>

namespace rootlab {

class FamilyHandle::Impl {
 public:
  virtual ~Impl() = default;
  virtual std::string kind() const = 0;
  virtual unsigned first_index() const = 0;
  virtual unsigned last_index() const = 0;
  virtual unsigned degree(unsigned k) const = 0;
  virtual Jet jet_eval(unsigned k, cplx z, unsigned m) const = 0;
  virtual ScaledJet scaled_jet(unsigned k, cplx z, unsigned m) const {
    return ScaledJet::from(jet_eval(k, z, m));
  }
  virtual Polynomial coeffs(unsigned k) const = 0;
  virtual double log_abs(unsigned k, cplx z) const { return scaled_jet(k, z, 0).log_abs(0); }
};

namespace {

// ---------------------------------------------------------------------------

class Iterates final : public FamilyHandle::Impl {
 public:
  explicit Iterates(DynSystem sys) : sys_(std::move(sys)) {}
  std::string kind() const override { return "iterates"; }
  unsigned first_index() const override { return 1; }
  unsigned last_index() const override {
    return static_cast<unsigned>(std::floor(31.0 / std::log2(static_cast<double>(sys_.degree()))));
  }
  unsigned degree(unsigned k) const override {
    unsigned n = 1;
    for (unsigned i = 0; i < k; ++i) n *= sys_.degree();
    return n;
  }
  Jet jet_eval(unsigned k, cplx z, unsigned m) const override { return iterate_jet(sys_.P, k, z, m); }
  ScaledJet scaled_jet(unsigned k, cplx z, unsigned m) const override {
    return iterate_scaled_jet(sys_.P, k, z, m);
  }
  Polynomial coeffs(unsigned k) const override {
    if (degree(k) > 64)
      throw Error(ErrorKind::degree_too_large, "iterate of degree " + std::to_string(degree(k)) +
                                                   " has no reliable coefficient form");
    Polynomial q = sys_.P;
    for (unsigned i = 1; i < k; ++i) q = compose(sys_.P, q);
    return q;
  }
  double log_abs(unsigned k, cplx z) const override { return log_abs_iterate(sys_.P, k, z); }

 private:
  DynSystem sys_;
};

// ---------------------------------------------------------------------------

class Orthogonal final : public FamilyHandle::Impl {
 public:
  Orthogonal(const DiscreteMeasure& mu, unsigned k_max) {
    const DiscreteMeasure m = mu.merged();
    if (k_max >= m.size())
      throw Error(ErrorKind::measure_support_too_small,
                  "degree " + std::to_string(k_max) + " needs more than " + std::to_string(m.size()) +
                      " distinct atoms");
    k_max_ = std::min(k_max, 64u);
    const std::vector<cplx> a = m.points();
    const std::vector<double> w = m.weights();
    const bool real_support =
        std::all_of(a.begin(), a.end(), [](cplx p) { return p.imag() == 0.0; });

    const auto inner = [&](const std::vector<cplx>& f, const std::vector<cplx>& g) {
      cplx s{0.0};
      for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * f[i] * std::conj(g[i]);
      return s;
    };

    // Values of q_0..q_k at the atoms.
    std::vector<std::vector<cplx>> v{std::vector<cplx>(a.size(), cplx(1.0))};
    std::vector<double> norm2{inner(v[0], v[0]).real()};
    for (unsigned k = 0; k < k_max_; ++k) {
      std::vector<cplx> u(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) u[i] = a[i] * v[k][i];
      std::vector<cplx> h(k + 1, cplx(0.0));
      if (real_support) {
        h[k] = inner(u, v[k]) / norm2[k];
        if (k > 0) h[k - 1] = norm2[k] / norm2[k - 1];
        for (std::size_t i = 0; i < a.size(); ++i) {
          u[i] -= h[k] * v[k][i];
          if (k > 0) u[i] -= h[k - 1] * v[k - 1][i];
        }
      } else {
        for (int pass = 0; pass < 2; ++pass) {
          for (unsigned j = 0; j <= k; ++j) {
            const cplx c = inner(u, v[j]) / norm2[j];
            h[j] += c;
            for (std::size_t i = 0; i < a.size(); ++i) u[i] -= c * v[j][i];
          }
        }
      }
      const double n2 = inner(u, u).real();
      if (!(n2 > 0.0) || !std::isfinite(n2))
        throw Error(ErrorKind::measure_support_too_small, "orthogonalization lost rank");
      recurrence_.push_back(std::move(h));
      v.push_back(std::move(u));
      norm2.push_back(n2);
    }
  }

  std::string kind() const override { return "orthogonal"; }
  unsigned first_index() const override { return 0; }
  unsigned last_index() const override { return k_max_; }
  unsigned degree(unsigned k) const override { return k; }

  Jet jet_eval(unsigned k, cplx z, unsigned m) const override {
    const Jet var = Jet::variable(z, m);
    std::vector<Jet> q{Jet::constant(1.0, m)};
    for (unsigned i = 0; i < k; ++i) {
      Jet next = var * q[i];
      for (unsigned j = 0; j <= i; ++j)
        if (recurrence_[i][j] != cplx(0.0)) next -= q[j] * recurrence_[i][j];
      q.push_back(std::move(next));
    }
    return q[k];
  }

  Polynomial coeffs(unsigned k) const override {
    std::vector<std::vector<cplx>> q{{cplx(1.0)}};
    for (unsigned i = 0; i < k; ++i) {
      std::vector<cplx> next(i + 2, cplx(0.0));
      for (unsigned c = 0; c <= i; ++c) next[c + 1] += q[i][c];
      for (unsigned j = 0; j <= i; ++j)
        for (unsigned c = 0; c <= j; ++c) next[c] -= recurrence_[i][j] * q[j][c];
      q.push_back(std::move(next));
    }
    return Polynomial(q[k]);
  }

 private:
  unsigned k_max_ = 0;
  std::vector<std::vector<cplx>> recurrence_;
};

// ---------------------------------------------------------------------------

class Binomial final : public FamilyHandle::Impl {
 public:
  explicit Binomial(cplx c) : c2_(c * c) {
    if (c == cplx(0.0)) throw Error(ErrorKind::invalid_argument, "binomial family needs c != 0");
  }
  std::string kind() const override { return "binomial"; }
  unsigned first_index() const override { return 1; }
  unsigned last_index() const override { return std::numeric_limits<unsigned>::max() / 2; }
  unsigned degree(unsigned k) const override { return 2 * k; }

  Jet jet_eval(unsigned k, cplx z, unsigned m) const override { return pow(base(z, m), k); }
  ScaledJet scaled_jet(unsigned k, cplx z, unsigned m) const override {
    const ScaledJet b = ScaledJet::from(base(z, m));
    ScaledJet out = ScaledJet::from(pow(b.unit, k));
    out.log_scale += k * b.log_scale;
    return out;
  }
  Polynomial coeffs(unsigned k) const override {
    std::vector<cplx> powers{cplx(1.0)};  // (-c^2)^j
    for (unsigned j = 1; j <= k; ++j) powers.push_back(powers.back() * -c2_);
    std::vector<cplx> c(2 * k + 1, cplx(0.0));
    double binom = 1.0;  // C(k, i)
    for (unsigned i = 0; i <= k; ++i) {
      c[2 * i] = binom * powers[k - i];
      binom = binom * (k - i) / (i + 1);
    }
    return Polynomial(std::move(c));
  }
  double log_abs(unsigned k, cplx z) const override { return k * std::log(std::abs(z * z - c2_)); }

 private:
  Jet base(cplx z, unsigned m) const {
    Jet::Storage t(m + 1, cplx(0.0));
    t[0] = z * z - c2_;
    if (m >= 1) t[1] = 2.0 * z;
    if (m >= 2) t[2] = 1.0;
    return Jet(std::move(t));
  }
  cplx c2_;
};

// ---------------------------------------------------------------------------

class Explicit final : public FamilyHandle::Impl {
 public:
  explicit Explicit(std::vector<Polynomial> polys) : polys_(std::move(polys)) {
    if (polys_.empty()) throw Error(ErrorKind::invalid_argument, "explicit family is empty");
    for (std::size_t i = 1; i < polys_.size(); ++i)
      if (polys_[i].degree() <= polys_[i - 1].degree())
        throw Error(ErrorKind::invalid_argument, "explicit family degrees must increase strictly");
  }
  std::string kind() const override { return "explicit"; }
  unsigned first_index() const override { return 1; }
  unsigned last_index() const override { return static_cast<unsigned>(polys_.size()); }
  unsigned degree(unsigned k) const override { return polys_[k - 1].degree(); }
  Jet jet_eval(unsigned k, cplx z, unsigned m) const override { return jet_of(polys_[k - 1], z, m); }
  Polynomial coeffs(unsigned k) const override { return polys_[k - 1]; }
  double log_abs(unsigned k, cplx z) const override { return std::log(std::abs(jet_of(polys_[k - 1], z, 0)[0])); }

 private:
  std::vector<Polynomial> polys_;
};

}  // namespace

// ---------------------------------------------------------------------------

std::string FamilyHandle::kind() const { return impl_->kind(); }
unsigned FamilyHandle::first_index() const { return impl_->first_index(); }
unsigned FamilyHandle::last_index() const { return impl_->last_index(); }

void FamilyHandle::check_index(unsigned k) const {
  if (k < impl_->first_index() || k > impl_->last_index())
    throw Error(ErrorKind::invalid_argument, "family index " + std::to_string(k) + " out of range");
}

unsigned FamilyHandle::degree(unsigned k) const {
  check_index(k);
  return impl_->degree(k);
}

Jet FamilyHandle::jet_eval(unsigned k, cplx z, unsigned m) const {
  check_index(k);
  return impl_->jet_eval(k, z, m);
}

ScaledJet FamilyHandle::scaled_jet(unsigned k, cplx z, unsigned m) const {
  check_index(k);
  return impl_->scaled_jet(k, z, m);
}

Polynomial FamilyHandle::coeffs(unsigned k) const {
  check_index(k);
  return impl_->coeffs(k);
}

double FamilyHandle::log_abs(unsigned k, cplx z) const {
  check_index(k);
  return impl_->log_abs(k, z);
}

JetFn FamilyHandle::member(unsigned k, unsigned m) const {
  check_index(k);
  return [impl = impl_, k, m](cplx z, unsigned order) {
    const ScaledJet j = impl->scaled_jet(k, z, order + m);
    return m == 0 ? j : j.differentiated(m);
  };
}

FamilyHandle gen_iterates(const DynSystem& sys) { return FamilyHandle(std::make_shared<Iterates>(sys)); }

FamilyHandle gen_orthogonal(const DiscreteMeasure& mu, unsigned k_max) {
  return FamilyHandle(std::make_shared<Orthogonal>(mu, k_max));
}

FamilyHandle gen_binomial(cplx c) { return FamilyHandle(std::make_shared<Binomial>(c)); }

FamilyHandle gen_explicit(std::vector<Polynomial> polys) {
  return FamilyHandle(std::make_shared<Explicit>(std::move(polys)));
}

DiscreteMeasure root_distribution(const Polynomial& q, double tol) {
  if (q.degree() == 0) throw Error(ErrorKind::invalid_argument, "root distribution needs degree >= 1");
  const RootSet rs = aberth_roots(q, tol);
  std::vector<Atom> atoms;
  for (const Root& r : rs.roots)
    atoms.push_back({r.location, static_cast<double>(r.multiplicity) / q.degree()});
  return DiscreteMeasure(std::move(atoms));
}

cplx inner_product(const DiscreteMeasure& mu, const Polynomial& f, const Polynomial& g) {
  const std::vector<cplx> pts = mu.points();
  const std::vector<cplx> fv = eval_many(f, pts);
  const std::vector<cplx> gv = eval_many(g, pts);
  cplx s{0.0};
  for (std::size_t i = 0; i < pts.size(); ++i) s += mu.atoms()[i].weight * fv[i] * std::conj(gv[i]);
  return s;
}

}  // namespace rootlab
