#include "cgmc/lcgs/compiler.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "cgmc/lcgs/parser.hpp"

namespace cgmc::lcgs {

namespace {

[[noreturn]] void resolve_error(SourcePos pos, const std::string& msg) {
  throw Error(ErrorKind::Resolve, pos, msg);
}

/// A template instance mid-compilation: declarations after relabelling.
struct Instance {
  std::string name;
  std::string template_name;
  SourcePos pos;
  std::vector<VarDecl> vars;
  std::vector<UpdateDecl> updates;
  std::vector<LabelDecl> labels;
  std::vector<ActionDecl> actions;
  std::unordered_map<std::string, int> var_slot;     // local name -> global slot
  std::unordered_map<std::string, int> label_id;     // local name -> prop id
  std::unordered_map<std::string, int> action_id;    // local name -> decl index
};

class Compiler {
 public:
  explicit Compiler(const Program& ast) : ast_(ast) {}

  CompiledGame run() {
    if (ast_.players.empty())
      throw Error(ErrorKind::Resolve, "model declares no players");
    check_global_names();
    resolve_consts();
    instantiate_all();
    build_tables();
    compile_exprs();
    return std::move(out_);
  }

 private:
  const Program& ast_;
  CompiledGame out_;
  std::vector<Instance> instances_;
  std::unordered_map<std::string, long> const_values_;

  // ---- global namespace ----

  void check_global_names() {
    std::unordered_map<std::string, SourcePos> seen;
    auto add = [&](const std::string& n, SourcePos p) {
      if (!seen.emplace(n, p).second)
        resolve_error(p, "duplicate declaration of '" + n + "'");
    };
    for (const auto& c : ast_.consts) add(c.name, c.pos);
    for (const auto& t : ast_.templates) add(t.name, t.pos);
    for (const auto& p : ast_.players) add(p.name, p.pos);
  }

  // ---- constants ----

  void resolve_consts() {
    std::vector<std::string> stack;
    for (const auto& c : ast_.consts) const_value(c.name, c.pos, stack);
  }

  const ConstDecl* find_const(const std::string& name) const {
    for (const auto& c : ast_.consts)
      if (c.name == name) return &c;
    return nullptr;
  }

  long const_value(const std::string& name, SourcePos use_pos,
                   std::vector<std::string>& stack) {
    auto it = const_values_.find(name);
    if (it != const_values_.end()) return it->second;
    for (const auto& s : stack)
      if (s == name)
        resolve_error(use_pos, "circular constant definition involving '" + name + "'");
    const ConstDecl* decl = find_const(name);
    if (!decl) resolve_error(use_pos, "undefined identifier '" + name + "'");
    stack.push_back(name);
    long v = eval_const_expr(*decl->value, stack);
    stack.pop_back();
    const_values_[name] = v;
    return v;
  }

  long eval_const_expr(const Expr& e, std::vector<std::string>& stack) {
    switch (e.kind) {
      case Expr::Kind::Int:
        return e.value;
      case Expr::Kind::Ident:
        if (!e.qualifier.empty())
          throw Error(ErrorKind::Type, e.pos,
                      "constant expressions cannot reference players");
        return const_value(e.name, e.pos, stack);
      case Expr::Kind::Unary: {
        long v = eval_const_expr(*e.operand, stack);
        return e.un_op == UnOp::Neg ? -v : (v == 0 ? 1 : 0);
      }
      case Expr::Kind::Binary: {
        long a = eval_const_expr(*e.lhs, stack);
        long b = eval_const_expr(*e.rhs, stack);
        switch (e.bin_op) {
          case BinOp::Add: return a + b;
          case BinOp::Sub: return a - b;
          case BinOp::Mul: return a * b;
          case BinOp::Div:
            if (b == 0)
              throw Error(ErrorKind::Type, e.pos, "division by zero in constant");
            return a / b;
          case BinOp::Lt: return a < b;
          case BinOp::Le: return a <= b;
          case BinOp::Gt: return a > b;
          case BinOp::Ge: return a >= b;
          case BinOp::Eq: return a == b;
          case BinOp::Ne: return a != b;
          case BinOp::And: return a != 0 && b != 0;
          case BinOp::Or: return a != 0 || b != 0;
        }
        return 0;
      }
      case Expr::Kind::MinMax: {
        long a = eval_const_expr(*e.lhs, stack);
        long b = eval_const_expr(*e.rhs, stack);
        return e.is_min ? std::min(a, b) : std::max(a, b);
      }
    }
    return 0;
  }

  bool is_const(const std::string& name) const { return find_const(name) != nullptr; }

  // ---- instantiation ----

  const TemplateDecl* find_template(const std::string& name) const {
    for (const auto& t : ast_.templates)
      if (t.name == name) return &t;
    return nullptr;
  }

  static void collect_idents(const Expr& e, std::set<std::string>& out) {
    switch (e.kind) {
      case Expr::Kind::Int:
        return;
      case Expr::Kind::Ident:
        if (!e.qualifier.empty()) out.insert(e.qualifier);
        out.insert(e.name);
        return;
      case Expr::Kind::Unary:
        collect_idents(*e.operand, out);
        return;
      case Expr::Kind::Binary:
      case Expr::Kind::MinMax:
        collect_idents(*e.lhs, out);
        collect_idents(*e.rhs, out);
        return;
    }
  }

  void instantiate_all() {
    for (const auto& p : ast_.players) instances_.push_back(instantiate(p));
  }

  Instance instantiate(const PlayerDecl& decl) {
    const TemplateDecl* tmpl = find_template(decl.template_name);
    if (!tmpl)
      resolve_error(decl.pos, "player '" + decl.name +
                                  "' references unknown template '" +
                                  decl.template_name + "'");
    validate_template(*tmpl);

    // Names a relabelling may target: anything declared or mentioned.
    std::set<std::string> occurring;
    for (const auto& v : tmpl->vars) {
      occurring.insert(v.name);
      collect_idents(*v.lo, occurring);
      collect_idents(*v.hi, occurring);
      collect_idents(*v.init, occurring);
    }
    for (const auto& u : tmpl->updates) {
      occurring.insert(u.var);
      collect_idents(*u.expr, occurring);
    }
    for (const auto& l : tmpl->labels) {
      occurring.insert(l.name);
      collect_idents(*l.expr, occurring);
    }
    for (const auto& a : tmpl->actions) {
      occurring.insert(a.name);
      collect_idents(*a.availability, occurring);
    }

    std::unordered_map<std::string, ExprRef> map;
    for (const auto& r : decl.relabels) {
      if (!occurring.count(r.from))
        resolve_error(r.pos, "relabelling target '" + r.from +
                                 "' does not occur in template '" + tmpl->name + "'");
      if (!map.emplace(r.from, r.to).second)
        resolve_error(r.pos, "identifier '" + r.from + "' relabelled twice");
    }

    auto renamed = [&](const std::string& n, SourcePos pos) -> std::string {
      auto it = map.find(n);
      if (it == map.end()) return n;
      const Expr& to = *it->second;
      if (to.kind != Expr::Kind::Ident || !to.qualifier.empty())
        resolve_error(pos, "relabelling of declared name '" + n +
                               "' must be a plain identifier");
      return to.name;
    };

    std::function<ExprRef(const ExprRef&)> subst = [&](const ExprRef& e) -> ExprRef {
      switch (e->kind) {
        case Expr::Kind::Int:
          return e;
        case Expr::Kind::Ident: {
          if (e->qualifier.empty()) {
            auto it = map.find(e->name);
            if (it != map.end()) return it->second;
            return e;
          }
          auto it = map.find(e->qualifier);
          if (it == map.end()) return e;
          const Expr& to = *it->second;
          if (to.kind != Expr::Kind::Ident || !to.qualifier.empty())
            resolve_error(e->pos, "relabelling of qualifier '" + e->qualifier +
                                      "' must be a plain identifier");
          return Expr::make_ident(to.name, e->name, e->pos);
        }
        case Expr::Kind::Unary:
          return Expr::make_unary(e->un_op, subst(e->operand), e->pos);
        case Expr::Kind::Binary:
          return Expr::make_binary(e->bin_op, subst(e->lhs), subst(e->rhs), e->pos);
        case Expr::Kind::MinMax:
          return Expr::make_minmax(e->is_min, subst(e->lhs), subst(e->rhs), e->pos);
      }
      return e;
    };

    Instance inst;
    inst.name = decl.name;
    inst.template_name = tmpl->name;
    inst.pos = decl.pos;
    for (const auto& v : tmpl->vars)
      inst.vars.push_back(VarDecl{v.pos, renamed(v.name, v.pos), subst(v.lo),
                                  subst(v.hi), subst(v.init)});
    for (const auto& u : tmpl->updates)
      inst.updates.push_back(UpdateDecl{u.pos, renamed(u.var, u.pos), subst(u.expr)});
    for (const auto& l : tmpl->labels)
      inst.labels.push_back(LabelDecl{l.pos, renamed(l.name, l.pos), subst(l.expr)});
    for (const auto& a : tmpl->actions)
      inst.actions.push_back(
          ActionDecl{a.pos, renamed(a.name, a.pos), subst(a.availability)});

    // Collision check after substitution.
    std::unordered_map<std::string, SourcePos> names;
    auto add = [&](const std::string& n, SourcePos p) {
      if (!names.emplace(n, p).second)
        resolve_error(p, "instance '" + decl.name + "' of template '" + tmpl->name +
                             "' declares '" + n + "' twice after relabelling");
    };
    for (const auto& v : inst.vars) add(v.name, v.pos);
    for (const auto& l : inst.labels) add(l.name, l.pos);
    for (const auto& a : inst.actions) add(a.name, a.pos);
    return inst;
  }

  void validate_template(const TemplateDecl& t) {
    std::unordered_map<std::string, SourcePos> names;
    auto add = [&](const std::string& n, SourcePos p) {
      if (!names.emplace(n, p).second)
        resolve_error(p, "template '" + t.name + "' declares '" + n + "' twice");
    };
    for (const auto& v : t.vars) add(v.name, v.pos);
    for (const auto& l : t.labels) add(l.name, l.pos);
    for (const auto& a : t.actions) add(a.name, a.pos);

    std::unordered_map<std::string, int> update_count;
    for (const auto& u : t.updates) {
      bool declared = false;
      for (const auto& v : t.vars) declared |= v.name == u.var;
      if (!declared)
        resolve_error(u.pos, "update of undeclared variable '" + u.var + "'");
      if (++update_count[u.var] > 1)
        resolve_error(u.pos, "variable '" + u.var + "' has more than one update");
    }
    for (const auto& v : t.vars)
      if (!update_count.count(v.name))
        resolve_error(v.pos, "variable '" + v.name + "' has no update expression");
  }

  // ---- symbol tables ----

  void build_tables() {
    for (size_t i = 0; i < instances_.size(); ++i) {
      out_.players.push_back(CompiledPlayer{instances_[i].name, {}});
      out_.player_index[instances_[i].name] = static_cast<int>(i);
    }
    for (size_t i = 0; i < instances_.size(); ++i) {
      Instance& inst = instances_[i];
      for (const auto& v : inst.vars) {
        int slot = static_cast<int>(out_.vars.size());
        inst.var_slot[v.name] = slot;
        out_.vars.push_back(CompiledVar{inst.name + "." + v.name,
                                        static_cast<int>(i), 0, 0, 0, {}});
        out_.var_index[out_.vars.back().qualified_name] = slot;
      }
      for (const auto& l : inst.labels) {
        int id = static_cast<int>(out_.labels.size());
        inst.label_id[l.name] = id;
        out_.labels.push_back(
            CompiledLabel{inst.name + "." + l.name, static_cast<int>(i), {}});
        out_.label_index[out_.labels.back().qualified_name] = id;
      }
      for (size_t a = 0; a < inst.actions.size(); ++a)
        inst.action_id[inst.actions[a].name] = static_cast<int>(a);
    }
  }

  // ---- expression compilation ----

  struct Scope {
    int player;           // owning instance
    bool allow_actions;   // true only for update expressions
    bool consts_only;     // true for init and range bounds
  };

  // (player, label) pairs currently being inlined, for cycle detection.
  std::set<std::pair<int, int>> label_stack_;

  int32_t compile_into(cgs::Expr& out, const Expr& e, const Scope& sc) {
    switch (e.kind) {
      case Expr::Kind::Int:
        return out.add_node({cgs::Expr::Op::Const, static_cast<int32_t>(e.value), 0});
      case Expr::Kind::Ident:
        return compile_ident(out, e, sc);
      case Expr::Kind::Unary: {
        int32_t a = compile_into(out, *e.operand, sc);
        return out.add_node(
            {e.un_op == UnOp::Neg ? cgs::Expr::Op::Neg : cgs::Expr::Op::Not, a, 0});
      }
      case Expr::Kind::Binary: {
        int32_t a = compile_into(out, *e.lhs, sc);
        int32_t b = compile_into(out, *e.rhs, sc);
        cgs::Expr::Op op = cgs::Expr::Op::Add;
        switch (e.bin_op) {
          case BinOp::Add: op = cgs::Expr::Op::Add; break;
          case BinOp::Sub: op = cgs::Expr::Op::Sub; break;
          case BinOp::Mul: op = cgs::Expr::Op::Mul; break;
          case BinOp::Div: op = cgs::Expr::Op::Div; break;
          case BinOp::Lt: op = cgs::Expr::Op::Lt; break;
          case BinOp::Le: op = cgs::Expr::Op::Le; break;
          case BinOp::Gt: op = cgs::Expr::Op::Gt; break;
          case BinOp::Ge: op = cgs::Expr::Op::Ge; break;
          case BinOp::Eq: op = cgs::Expr::Op::Eq; break;
          case BinOp::Ne: op = cgs::Expr::Op::Ne; break;
          case BinOp::And: op = cgs::Expr::Op::And; break;
          case BinOp::Or: op = cgs::Expr::Op::Or; break;
        }
        return out.add_node({op, a, b});
      }
      case Expr::Kind::MinMax: {
        int32_t a = compile_into(out, *e.lhs, sc);
        int32_t b = compile_into(out, *e.rhs, sc);
        return out.add_node(
            {e.is_min ? cgs::Expr::Op::Min : cgs::Expr::Op::Max, a, b});
      }
    }
    resolve_error(e.pos, "internal: unknown expression kind");
  }

  int32_t compile_ident(cgs::Expr& out, const Expr& e, const Scope& sc) {
    if (e.qualifier.empty()) {
      if (is_const(e.name)) {
        std::vector<std::string> stack;
        long v = const_value(e.name, e.pos, stack);
        return out.add_node({cgs::Expr::Op::Const, static_cast<int32_t>(v), 0});
      }
      if (sc.consts_only)
        throw Error(ErrorKind::Type, e.pos,
                    "only constants may appear here, found '" + e.name + "'");
      Instance& inst = instances_[sc.player];
      if (auto it = inst.var_slot.find(e.name); it != inst.var_slot.end())
        return out.add_node({cgs::Expr::Op::Var, it->second, 0});
      if (auto it = inst.label_id.find(e.name); it != inst.label_id.end())
        return inline_label(out, sc.player, it->second, e.pos);
      if (inst.action_id.count(e.name))
        resolve_error(e.pos, "undefined identifier '" + e.name +
                                 "' (action indicators must be written "
                                 "'player.action')");
      if (out_.player_index.count(e.name))
        resolve_error(e.pos, "player name '" + e.name + "' used as a value");
      resolve_error(e.pos, "undefined identifier '" + e.name + "'");
    }
    if (sc.consts_only)
      throw Error(ErrorKind::Type, e.pos,
                  "only constants may appear here, found '" + e.qualifier + "." +
                      e.name + "'");
    auto pit = out_.player_index.find(e.qualifier);
    if (pit == out_.player_index.end())
      resolve_error(e.pos, "unknown player '" + e.qualifier + "'");
    Instance& other = instances_[pit->second];
    if (auto it = other.var_slot.find(e.name); it != other.var_slot.end())
      return out.add_node({cgs::Expr::Op::Var, it->second, 0});
    if (auto it = other.label_id.find(e.name); it != other.label_id.end())
      return inline_label(out, pit->second, it->second, e.pos);
    if (auto it = other.action_id.find(e.name); it != other.action_id.end()) {
      if (!sc.allow_actions)
        resolve_error(e.pos, "action indicator '" + e.qualifier + "." + e.name +
                                 "' is only allowed in update expressions");
      return out.add_node({cgs::Expr::Op::Action, pit->second, it->second});
    }
    resolve_error(e.pos, "player '" + e.qualifier + "' has no symbol '" + e.name + "'");
  }

  int32_t inline_label(cgs::Expr& out, int player, int /*local*/ prop_owner_id,
                       SourcePos pos) {
    // prop_owner_id here is the label id local to `player`'s instance tables;
    // find the declaration to inline.
    Instance& inst = instances_[player];
    const LabelDecl* decl = nullptr;
    for (const auto& l : inst.labels)
      if (inst.label_id.at(l.name) == prop_owner_id) decl = &l;
    if (!decl) resolve_error(pos, "internal: label lookup failed");
    auto key = std::make_pair(player, prop_owner_id);
    if (label_stack_.count(key))
      resolve_error(pos, "label '" + inst.name + "." + decl->name +
                             "' is defined circularly");
    label_stack_.insert(key);
    Scope sc{player, false, false};
    int32_t node = compile_into(out, *decl->expr, sc);
    label_stack_.erase(key);
    return node;
  }

  cgs::Expr compile_expr(const Expr& e, const Scope& sc) {
    cgs::Expr out;
    out.set_root(compile_into(out, e, sc));
    return out;
  }

  long eval_const_only(const Expr& e, int player, const char* what,
                       const std::string& name) {
    Scope sc{player, false, true};
    cgs::Expr compiled = compile_expr(e, sc);
    try {
      return compiled.eval({}, nullptr);
    } catch (const Error&) {
      throw Error(ErrorKind::Type, e.pos,
                  std::string(what) + " of '" + name + "' is not a constant");
    }
  }

  void compile_exprs() {
    // Variable ranges, init values and updates.
    for (size_t i = 0; i < instances_.size(); ++i) {
      Instance& inst = instances_[i];
      for (const auto& v : inst.vars) {
        int slot = inst.var_slot.at(v.name);
        CompiledVar& cv = out_.vars[slot];
        cv.lo = static_cast<int>(
            eval_const_only(*v.lo, static_cast<int>(i), "range bound", v.name));
        cv.hi = static_cast<int>(
            eval_const_only(*v.hi, static_cast<int>(i), "range bound", v.name));
        if (cv.lo > cv.hi)
          throw Error(ErrorKind::Type, v.pos,
                      "empty range [" + std::to_string(cv.lo) + ".." +
                          std::to_string(cv.hi) + "] for '" + cv.qualified_name + "'");
        cv.init = static_cast<int>(
            eval_const_only(*v.init, static_cast<int>(i), "init expression", v.name));
      }
      for (const auto& u : inst.updates) {
        int slot = inst.var_slot.at(u.var);
        out_.vars[slot].update =
            compile_expr(*u.expr, Scope{static_cast<int>(i), true, false});
      }
      for (const auto& l : inst.labels) {
        int id = inst.label_id.at(l.name);
        out_.labels[id].expr =
            compile_expr(*l.expr, Scope{static_cast<int>(i), false, false});
      }
      for (const auto& a : inst.actions)
        out_.players[i].actions.push_back(CompiledAction{
            a.name, compile_expr(*a.availability, Scope{static_cast<int>(i), false, false})});
    }
    out_.initial.reserve(out_.vars.size());
    for (const auto& v : out_.vars) out_.initial.push_back(v.init);
  }
};

}  // namespace

CompiledGame resolve_and_instantiate(const Program& ast) {
  return Compiler(fold_constants(ast)).run();
}

void check_ranges(const CompiledGame& game) {
  for (const auto& v : game.vars) {
    if (v.init < v.lo || v.init > v.hi)
      throw Error(ErrorKind::Type,
                  "initial value " + std::to_string(v.init) + " of '" +
                      v.qualified_name + "' outside [" + std::to_string(v.lo) +
                      ".." + std::to_string(v.hi) + "]");
  }
}

CompiledGame compile(std::string_view source) {
  CompiledGame game = resolve_and_instantiate(parse(source));
  check_ranges(game);
  return game;
}

}  // namespace cgmc::lcgs
