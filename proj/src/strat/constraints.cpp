#include "cgmc/strat/constraints.hpp"

#include <optional>

namespace cgmc::strat {

namespace {

constexpr size_t kMaxSystems = 64;
constexpr size_t kMaxRows = 128;

struct Row {
  Eigen::VectorXd c;
  double rhs;  // c . s >= rhs
};
using System = std::vector<Row>;
using Dnf = std::vector<System>;

struct Affine {
  Eigen::VectorXd c;
  double k;
};

std::optional<Affine> affine_of(const cgs::Expr& e, int32_t node, int n) {
  const auto& nd = e.node(node);
  using Op = cgs::Expr::Op;
  switch (nd.op) {
    case Op::Const:
      return Affine{Eigen::VectorXd::Zero(n), static_cast<double>(nd.a)};
    case Op::Var: {
      Affine a{Eigen::VectorXd::Zero(n), 0};
      a.c(nd.a) = 1.0;
      return a;
    }
    case Op::Add: {
      auto l = affine_of(e, nd.a, n), r = affine_of(e, nd.b, n);
      if (!l || !r) return std::nullopt;
      return Affine{l->c + r->c, l->k + r->k};
    }
    case Op::Sub: {
      auto l = affine_of(e, nd.a, n), r = affine_of(e, nd.b, n);
      if (!l || !r) return std::nullopt;
      return Affine{l->c - r->c, l->k - r->k};
    }
    case Op::Neg: {
      auto x = affine_of(e, nd.a, n);
      if (!x) return std::nullopt;
      return Affine{-x->c, -x->k};
    }
    case Op::Mul: {
      auto l = affine_of(e, nd.a, n), r = affine_of(e, nd.b, n);
      if (!l || !r) return std::nullopt;
      if (l->c.isZero(0)) return Affine{l->k * r->c, l->k * r->k};
      if (r->c.isZero(0)) return Affine{r->k * l->c, r->k * l->k};
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

Dnf cross(const Dnf& l, const Dnf& r) {
  Dnf out;
  for (const auto& a : l) {
    for (const auto& b : r) {
      if (out.size() >= kMaxSystems) return out;
      if (a.size() + b.size() > kMaxRows) continue;
      System s = a;
      s.insert(s.end(), b.begin(), b.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

Dnf unite(Dnf l, const Dnf& r) {
  for (const auto& s : r) {
    if (l.size() >= kMaxSystems) break;
    l.push_back(s);
  }
  return l;
}

Dnf top() { return Dnf{System{}}; }

/// a >= b + delta as a row set; `ge` false means a <= b - delta is encoded
/// by negating the difference.
System cmp_rows(const Affine& l, const Affine& r, bool ge, double delta) {
  Eigen::VectorXd c = ge ? Eigen::VectorXd(l.c - r.c) : Eigen::VectorXd(r.c - l.c);
  double rhs = ge ? (r.k - l.k + delta) : (l.k - r.k + delta);
  if (c.isZero(0)) {
    // Constant comparison: either trivially true (no rows) or unsatisfiable.
    if (0 >= rhs) return System{};
    Row impossible{c, rhs};
    return System{impossible};  // 0 >= positive: kept, LP reports infeasible
  }
  return System{Row{c, rhs}};
}

class Extractor {
 public:
  Extractor(const cgs::GameStructure& game, const atl::FormulaStore& fs)
      : game_(game), fs_(fs), n_(game.var_count()) {}

  Dnf formula(atl::FormulaId f, bool pos) {
    const atl::Node& nd = fs_.node(f);
    switch (nd.kind) {
      case atl::Kind::True:
        return pos ? top() : Dnf{};
      case atl::Kind::Prop: {
        const cgs::Expr* e = game_.label_expr(nd.prop);
        if (!e || e->empty()) return top();  // no linear information
        return expr(*e, e->root(), pos);
      }
      case atl::Kind::Not:
        return formula(nd.a, !pos);
      case atl::Kind::Or:
        return pos ? unite(formula(nd.a, true), formula(nd.b, true))
                   : cross(formula(nd.a, false), formula(nd.b, false));
      case atl::Kind::And:
        return pos ? cross(formula(nd.a, true), formula(nd.b, true))
                   : unite(formula(nd.a, false), formula(nd.b, false));
      case atl::Kind::EnforceNext:
      case atl::Kind::DespiteNext:
      case atl::Kind::EnforceEventually:
      case atl::Kind::DespiteEventually:
      case atl::Kind::EnforceInvariant:
      case atl::Kind::DespiteInvariant:
        return formula(nd.a, pos);
      case atl::Kind::EnforceUntil:
      case atl::Kind::DespiteUntil:
        return formula(nd.b, pos);  // the constituent goal region
    }
    return top();
  }

 private:
  const cgs::GameStructure& game_;
  const atl::FormulaStore& fs_;
  int n_;

  Dnf expr(const cgs::Expr& e, int32_t node, bool pos) {
    const auto& nd = e.node(node);
    using Op = cgs::Expr::Op;
    switch (nd.op) {
      case Op::And:
        return pos ? cross(expr(e, nd.a, true), expr(e, nd.b, true))
                   : unite(expr(e, nd.a, false), expr(e, nd.b, false));
      case Op::Or:
        return pos ? unite(expr(e, nd.a, true), expr(e, nd.b, true))
                   : cross(expr(e, nd.a, false), expr(e, nd.b, false));
      case Op::Not:
        return expr(e, nd.a, !pos);
      case Op::Lt:
        return comparison(e, nd.a, nd.b, pos ? CmpKind::Lt : CmpKind::Ge);
      case Op::Le:
        return comparison(e, nd.a, nd.b, pos ? CmpKind::Le : CmpKind::Gt);
      case Op::Gt:
        return comparison(e, nd.a, nd.b, pos ? CmpKind::Gt : CmpKind::Le);
      case Op::Ge:
        return comparison(e, nd.a, nd.b, pos ? CmpKind::Ge : CmpKind::Lt);
      case Op::Eq:
        return comparison(e, nd.a, nd.b, pos ? CmpKind::Eq : CmpKind::Ne);
      case Op::Ne:
        return comparison(e, nd.a, nd.b, pos ? CmpKind::Ne : CmpKind::Eq);
      case Op::Const:
        return ((nd.a != 0) == pos) ? top() : Dnf{};
      default: {
        // Truthiness of an arithmetic expression: e != 0 (or e == 0 negated).
        auto a = affine_of(e, node, n_);
        if (!a) return top();  // non-affine atom dropped
        Affine zero{Eigen::VectorXd::Zero(n_), 0};
        return pos ? affine_cmp(*a, zero, CmpKind::Ne)
                   : affine_cmp(*a, zero, CmpKind::Eq);
      }
    }
  }

  enum class CmpKind { Lt, Le, Gt, Ge, Eq, Ne };

  Dnf comparison(const cgs::Expr& e, int32_t lhs, int32_t rhs, CmpKind k) {
    auto l = affine_of(e, lhs, n_);
    auto r = affine_of(e, rhs, n_);
    if (!l || !r) return top();  // non-affine atom dropped
    return affine_cmp(*l, *r, k);
  }

  Dnf affine_cmp(const Affine& l, const Affine& r, CmpKind k) {
    switch (k) {
      case CmpKind::Ge:
        return Dnf{cmp_rows(l, r, true, 0)};
      case CmpKind::Gt:
        return Dnf{cmp_rows(l, r, true, 1)};
      case CmpKind::Le:
        return Dnf{cmp_rows(l, r, false, 0)};
      case CmpKind::Lt:
        return Dnf{cmp_rows(l, r, false, 1)};
      case CmpKind::Eq: {
        System s = cmp_rows(l, r, true, 0);
        System t = cmp_rows(l, r, false, 0);
        s.insert(s.end(), t.begin(), t.end());
        return Dnf{std::move(s)};
      }
      case CmpKind::Ne:
        return Dnf{cmp_rows(l, r, true, 1), cmp_rows(l, r, false, 1)};
    }
    return top();
  }
};

}  // namespace

std::vector<LinearSystem> extract_constraints(const cgs::GameStructure& game,
                                              const atl::FormulaStore& formulas,
                                              atl::FormulaId f) {
  Extractor ex(game, formulas);
  Dnf dnf = ex.formula(f, true);
  std::vector<LinearSystem> out;
  int n = game.var_count();
  for (const auto& sys : dnf) {
    if (sys.empty()) continue;  // no linear rows: contributes nothing
    LinearSystem ls;
    ls.C.resize(static_cast<int>(sys.size()), n);
    ls.b.resize(static_cast<int>(sys.size()));
    for (size_t i = 0; i < sys.size(); ++i) {
      ls.C.row(static_cast<int>(i)) = sys[i].c.transpose();
      ls.b(static_cast<int>(i)) = sys[i].rhs;
    }
    out.push_back(std::move(ls));
  }
  return out;
}

}  // namespace cgmc::strat
