// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/cad.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cad_internal.hpp"
#include "json.hpp"
#include "salp/algebraic_context.hpp"
#include "salp/error.hpp"

namespace salp {

namespace {

using detail::FactorSet;

// Roots of the level polynomials over one base point, merged in order.
struct Stack {
  std::vector<KRoot> roots;
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> owners;  // (poly, 1-based index)
  std::vector<KPoly> kpolys;
  std::vector<bool> nullified;
};

Stack compute_stack(AlgebraicContext& ctx, const std::vector<Polynomial>& polys) {
  Stack st;
  std::size_t var = ctx.size();
  for (std::size_t i = 0; i < polys.size(); ++i) {
    KPoly kp = ctx.to_kpoly(polys[i], var, ctx.size());
    st.nullified.push_back(kp.empty());
    auto roots = ctx.real_roots(kp);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      bool merged = false;
      for (; pos < st.roots.size(); ++pos) {
        int c = ctx.compare_roots(roots[k], st.roots[pos]);
        if (c == 0) {
          st.owners[pos].emplace_back(i, static_cast<unsigned>(k + 1));
          merged = true;
          break;
        }
        if (c < 0) break;
      }
      if (!merged) {
        st.roots.insert(st.roots.begin() + static_cast<std::ptrdiff_t>(pos), roots[k]);
        st.owners.insert(st.owners.begin() + static_cast<std::ptrdiff_t>(pos),
                         {{i, static_cast<unsigned>(k + 1)}});
      }
      ++pos;
    }
    st.kpolys.push_back(std::move(kp));
  }
  return st;
}

Rational upper_of(const KRoot& r) { return r.exact ? r.value : r.hi; }
Rational lower_of(const KRoot& r) { return r.exact ? r.value : r.lo; }

struct ChildSpec {
  CellExtension ext;
  int root = -1;  // index into the stack's roots for sections
  Rational value;  // sector sample
  std::vector<int> signs;
};

RootRef root_ref(const Stack& st, const std::vector<Polynomial>& polys, std::size_t pos) {
  const auto& [p, k] = st.owners[pos].front();
  return RootRef{polys[p], k};
}

std::vector<ChildSpec> make_children(AlgebraicContext& ctx, Stack& st, const std::vector<Polynomial>& polys) {
  std::size_t k = st.roots.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    while (!(upper_of(st.roots[i]) < lower_of(st.roots[i + 1]))) {
      ctx.refine_root(st.roots[i]);
      ctx.refine_root(st.roots[i + 1]);
    }
  }
  std::vector<ChildSpec> out;
  auto sector_signs = [&](const Rational& s) {
    std::vector<int> signs;
    for (std::size_t i = 0; i < polys.size(); ++i) {
      if (st.nullified[i]) {
        signs.push_back(0);
      } else {
        signs.push_back(ctx.sign_nonzero(ctx.keval(st.kpolys[i], s, ctx.size()), ctx.size()));
      }
    }
    return signs;
  };
  for (std::size_t i = 0; i <= k; ++i) {
    ChildSpec sec;
    sec.ext.kind = CellExtension::Sector;
    if (i == 0) {
      sec.ext.lower.kind = CellBound::NegInf;
    } else {
      sec.ext.lower.kind = CellBound::Root;
      sec.ext.lower.root = root_ref(st, polys, i - 1);
    }
    if (i == k) {
      sec.ext.upper.kind = CellBound::PosInf;
    } else {
      sec.ext.upper.kind = CellBound::Root;
      sec.ext.upper.root = root_ref(st, polys, i);
    }
    if (k == 0) {
      sec.value = 0;
    } else if (i == 0) {
      sec.value = Rational(ceil_of(lower_of(st.roots[0])) - 1);
    } else if (i == k) {
      sec.value = Rational(floor_of(upper_of(st.roots[k - 1])) + 1);
    } else {
      sec.value = simplest_between(upper_of(st.roots[i - 1]), lower_of(st.roots[i]));
    }
    sec.signs = sector_signs(sec.value);
    if (i > 0) {
      ChildSpec& sect = out.back();
      // Section signs: zero for owners, otherwise as on the sector below.
      std::vector<int> prev = out[out.size() - 2].signs;
      for (const auto& owner : st.owners[i - 1]) prev[owner.first] = 0;
      sect.signs = std::move(prev);
    }
    if (i < k) {
      out.push_back(std::move(sec));
      ChildSpec s;
      s.ext.kind = CellExtension::Section;
      s.ext.section = root_ref(st, polys, i);
      s.root = static_cast<int>(i);
      out.push_back(std::move(s));
    } else {
      out.push_back(std::move(sec));
    }
  }
  return out;
}

// Fills the node's sample and pushes its coordinate onto ctx.
void materialize(CadNode& node, const ChildSpec& spec, Stack& st, AlgebraicContext& ctx,
                 AlgebraicContext& child_ctx, const CadOptions& opts, bool& exact) {
  exact = true;
  if (spec.root < 0) {
    node.sample = RealAlgebraicNumber(spec.value);
    child_ctx.push_rational(spec.value);
    return;
  }
  KRoot& r = st.roots[static_cast<std::size_t>(spec.root)];
  if (r.exact) {
    node.sample = RealAlgebraicNumber(r.value);
    child_ctx.push_rational(r.value);
    return;
  }
  if (!ctx.has_algebraic() || opts.algebraic_samples) {
    node.sample = ctx.to_ran(r);
  } else {
    node.sample = RealAlgebraicNumber((r.lo + r.hi) / 2);
    exact = false;
  }
  if (r.exact) {
    child_ctx.push_rational(r.value);
  } else {
    child_ctx.push_root(r);
  }
}

int factor_sign(const Factorization& f, const std::function<int(std::size_t, std::size_t)>& level_sign) {
  int s = f.sign;
  for (const auto& fac : f.factors) {
    if (s == 0) break;
    int t = level_sign(fac.level, fac.index);
    if (t == 0) return 0;
    if (t < 0 && fac.exponent % 2 == 1) s = -s;
  }
  return s;
}

class Lifter {
 public:
  Lifter(CadTree& tree, const std::vector<std::vector<Polynomial>>& levels,
         const std::vector<Factorization>& facs, const CadOptions& opts)
      : levels_(levels), facs_(facs), opts_(opts), depth_(tree.depth()), path_signs_(tree.depth()) {}

  struct Cond {
    std::size_t input;
    unsigned mask;
    std::size_t level;
  };
  void set_constraint(std::vector<std::vector<Cond>> disj, std::size_t keep, bool first_witness) {
    constrained_ = true;
    disj_ = std::move(disj);
    keep_ = keep;
    first_witness_ = first_witness;
  }

  bool lift(CadNode& node, AlgebraicContext& ctx, std::size_t depth) {
    if (depth == depth_) return true;
    Stack st = compute_stack(ctx, levels_[depth]);
    auto specs = make_children(ctx, st, levels_[depth]);
    bool any = false;
    for (auto& spec : specs) {
      path_signs_[depth] = spec.signs;
      bool dead = constrained_ && !alive(depth + 1);
      if (dead && depth + 1 > keep_) continue;
      CadNode child;
      child.ext = spec.ext;
      child.signs = spec.signs;
      AlgebraicContext cctx = ctx;
      bool exact = true;
      materialize(child, spec, st, ctx, cctx, opts_, exact);
      bool ok = false;
      if (!(dead && depth + 1 == keep_)) ok = lift(child, cctx, depth + 1) && !dead;
      if (depth + 1 <= keep_ || ok) node.children.push_back(std::move(child));
      any = any || ok;
      if (ok && first_witness_ && depth + 1 > keep_) break;
    }
    return any;
  }

 private:
  bool alive(std::size_t depth) const {
    auto level_sign = [&](std::size_t lvl, std::size_t idx) { return path_signs_[lvl][idx]; };
    for (const auto& d : disj_) {
      bool ok = true;
      for (const auto& c : d) {
        if (c.level > depth) continue;
        if (!(c.mask & sign_bit(factor_sign(facs_[c.input], level_sign)))) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  }

  const std::vector<std::vector<Polynomial>>& levels_;
  const std::vector<Factorization>& facs_;
  const CadOptions& opts_;
  std::size_t depth_;
  std::vector<std::vector<int>> path_signs_;
  bool constrained_ = false;
  std::vector<std::vector<Cond>> disj_;
  std::size_t keep_ = 0;
  bool first_witness_ = false;
};

void map_polys(CadNode& node, const std::function<Polynomial(const Polynomial&)>& f) {
  if (node.ext.kind == CellExtension::Section) {
    node.ext.section.poly = f(node.ext.section.poly);
  } else {
    if (node.ext.lower.kind == CellBound::Root) node.ext.lower.root.poly = f(node.ext.lower.root.poly);
    if (node.ext.upper.kind == CellBound::Root) node.ext.upper.root.poly = f(node.ext.upper.root.poly);
  }
  for (auto& c : node.children) map_polys(c, f);
}

void truncate(CadNode& node, std::size_t depth) {
  if (depth == 0) {
    node.children.clear();
    return;
  }
  for (auto& c : node.children) truncate(c, depth - 1);
}

std::string root_ref_string(const RootRef& r) {
  return "root(" + r.poly.to_string() + ", " + std::to_string(r.root_index) + ")";
}

std::string bound_string(const CellBound& b) {
  switch (b.kind) {
    case CellBound::NegInf: return "-inf";
    case CellBound::PosInf: return "+inf";
    default: return root_ref_string(b.root);
  }
}

nlohmann::json bound_json(const CellBound& b) {
  if (b.kind == CellBound::NegInf) return "-inf";
  if (b.kind == CellBound::PosInf) return "+inf";
  return {{"poly", b.root.poly.to_string()}, {"root_index", b.root.root_index}};
}

nlohmann::json node_json(const CadNode& n, bool is_root) {
  nlohmann::json j;
  if (!is_root) {
    if (n.ext.kind == CellExtension::Section) {
      j["kind"] = "section";
      j["root"] = {{"poly", n.ext.section.poly.to_string()}, {"root_index", n.ext.section.root_index}};
    } else {
      j["kind"] = "sector";
      j["lower"] = bound_json(n.ext.lower);
      j["upper"] = bound_json(n.ext.upper);
    }
    j["sample"] = n.sample.to_string();
    j["signs"] = n.signs;
  }
  nlohmann::json kids = nlohmann::json::array();
  for (const auto& c : n.children) kids.push_back(node_json(c, false));
  j["children"] = std::move(kids);
  return j;
}

}  // namespace

bool CellExtension::operator==(const CellExtension& o) const {
  if (kind != o.kind) return false;
  if (kind == Section) return section == o.section;
  return lower == o.lower && upper == o.upper;
}

std::string CellExtension::to_string() const {
  if (kind == Section) return "section " + root_ref_string(section);
  return "sector (" + bound_string(lower) + ", " + bound_string(upper) + ")";
}

std::size_t CadCell::dimension() const {
  return static_cast<std::size_t>(
      std::count_if(stack.begin(), stack.end(), [](const CellExtension& e) { return e.kind == CellExtension::Sector; }));
}

// ---- CadTree ----

std::vector<std::pair<std::vector<std::size_t>, const CadNode*>> CadTree::nodes_at(std::size_t depth) const {
  std::vector<std::pair<std::vector<std::size_t>, const CadNode*>> out;
  std::vector<std::size_t> path;
  std::function<void(const CadNode&, std::size_t)> walk = [&](const CadNode& n, std::size_t d) {
    if (d == depth) {
      out.emplace_back(path, &n);
      return;
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path.push_back(i);
      walk(n.children[i], d + 1);
      path.pop_back();
    }
  };
  walk(root_, 0);
  return out;
}

const CadNode& CadTree::node(const std::vector<std::size_t>& path) const {
  const CadNode* n = &root_;
  for (std::size_t i : path) {
    if (i >= n->children.size()) structural("CadTree::node: path out of range");
    n = &n->children[i];
  }
  return *n;
}

int CadTree::path_sign(const std::vector<std::size_t>& path, std::size_t level, std::size_t index) const {
  if (level >= path.size()) structural("CadTree::path_sign: path too short");
  std::vector<std::size_t> prefix(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(level + 1));
  return node(prefix).signs.at(index);
}

int CadTree::input_sign(const std::vector<std::size_t>& path, std::size_t input) const {
  if (inputs_[input].level() > path.size()) structural("CadTree::input_sign: path too short");
  // Walk once, collecting the nodes along the path.
  std::vector<const CadNode*> nodes;
  const CadNode* n = &root_;
  for (std::size_t i : path) {
    n = &n->children.at(i);
    nodes.push_back(n);
  }
  return factor_sign(input_factors_[input],
                     [&](std::size_t lvl, std::size_t idx) { return nodes[lvl]->signs[idx]; });
}

SamplePoint CadTree::sample(const std::vector<std::size_t>& path) const {
  SamplePoint out;
  const CadNode* n = &root_;
  for (std::size_t i : path) {
    n = &n->children.at(i);
    out.push_back(n->sample);
  }
  return out;
}

BasicSystem CadTree::describe(const std::vector<std::size_t>& path) const {
  BasicSystem b(order_);
  const CadNode* n = &root_;
  for (std::size_t lvl = 0; lvl < path.size(); ++lvl) {
    n = &n->children.at(path[lvl]);
    for (std::size_t i = 0; i < levels_[lvl].size(); ++i) {
      int s = n->signs[i];
      b.add(levels_[lvl][i], s == 0 ? Rel::EQ0 : (s > 0 ? Rel::GT0 : Rel::LT0));
    }
  }
  return b;
}

std::vector<CadCell> CadTree::cells() const {
  std::vector<CadCell> out;
  for (auto& [path, leaf] : nodes_at(depth())) {
    (void)leaf;
    CadCell c;
    c.path = path;
    const CadNode* n = &root_;
    for (std::size_t i : path) {
      n = &n->children[i];
      c.stack.push_back(n->ext);
      c.sample.push_back(n->sample);
    }
    for (std::size_t i = 0; i < inputs_.size(); ++i) c.signs.push_back(input_sign(path, i));
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t CadTree::num_cells() const { return nodes_at(depth()).size(); }

std::vector<std::size_t> CadTree::stack_sizes(std::size_t depth) const {
  std::vector<std::size_t> out;
  for (auto& [path, n] : nodes_at(depth)) {
    (void)path;
    out.push_back(n->children.size());
  }
  return out;
}

std::string CadTree::to_json() const {
  nlohmann::json j;
  j["order"] = order_.names();
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& lv : levels_) {
    nlohmann::json l = nlohmann::json::array();
    for (const auto& p : lv) l.push_back(p.to_string());
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  nlohmann::json ins = nlohmann::json::array();
  for (const auto& p : inputs_) ins.push_back(p.to_string());
  j["inputs"] = std::move(ins);
  j["partial"] = partial_;
  j["cells"] = num_cells();
  j["tree"] = node_json(root_, true);
  return j.dump(2);
}

// ---- building ----

CadBuilder::CadBuilder(VarOrder order, std::vector<Polynomial> inputs, CadOptions options)
    : order_(std::move(order)), inputs_(std::move(inputs)), options_(options) {
  for (auto& p : inputs_) p = p.embed(order_);
}

CadTree CadBuilder::run(const SemiAlgebraicSystem* constraint, std::size_t keep, bool first_witness) {
  const VarOrder& order = order_;
  std::vector<Polynomial> inputs = inputs_;
  const CadOptions& opts = options_;
  CadTree tree;
  if (order.size() > opts.max_vars) {
    throw Error(ErrorCode::Budget, "CAD over " + std::to_string(order.size()) + " variables exceeds the cap of " +
                                       std::to_string(opts.max_vars));
  }
  std::vector<std::vector<Lifter::Cond>> disj;
  if (constraint) {
    std::vector<Polynomial> normal;
    for (const auto& p : inputs) normal.push_back(normalize(p));
    for (const auto& b : constraint->disjuncts()) {
      std::vector<Lifter::Cond> conds;
      if (b.is_false()) continue;
      for (const auto& [p0, mask0] : b.masks()) {
        int s = 1;
        Polynomial p = normalize(p0.embed(order), &s);
        unsigned mask = mask0;
        if (s < 0) mask = (mask & kSignZero) | ((mask & kSignNeg) ? kSignPos : 0) | ((mask & kSignPos) ? kSignNeg : 0);
        auto it = std::find(normal.begin(), normal.end(), p);
        std::size_t idx = static_cast<std::size_t>(it - normal.begin());
        if (it == normal.end()) {
          inputs.push_back(p);
          normal.push_back(p);
        }
        conds.push_back({idx, mask, p.level()});
      }
      disj.push_back(std::move(conds));
    }
  }
  FactorSet fs(order, opts.max_projection);
  std::vector<Factorization> facs;
  for (const auto& p : inputs) facs.push_back(fs.add(p));
  detail::project_all(fs, order.size(), opts.derivative_closed_levels);

  tree.order_ = order;
  tree.inputs_ = std::move(inputs);
  tree.input_factors_ = std::move(facs);
  tree.levels_ = std::move(fs.levels());
  tree.closed_levels_ = std::min(opts.derivative_closed_levels, order.size());
  tree.partial_ = constraint != nullptr;
  tree.root_ = CadNode{};

  Lifter lifter(tree, tree.levels_, tree.input_factors_, opts);
  if (constraint) lifter.set_constraint(std::move(disj), keep, first_witness);
  AlgebraicContext ctx(order, opts.refinement_budget);
  lifter.lift(tree.root_, ctx, 0);
  return tree;
}

CadTree CadBuilder::build() { return run(nullptr, 0, false); }

CadTree CadBuilder::build_partial(const SemiAlgebraicSystem& constraint, std::size_t keep_levels,
                                  bool first_witness) {
  return run(&constraint, keep_levels, first_witness);
}

CadTree build_cad(const std::vector<Polynomial>& polys, const VarOrder& order, const CadOptions& options) {
  return CadBuilder(order, polys, options).build();
}

int cell_compare(const CadCell& a, const CadCell& b) {
  std::size_t n = std::min(a.path.size(), b.path.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.path[i] != b.path[i]) return a.path[i] < b.path[i] ? -1 : 1;
  }
  return 0;
}

CadTree induced(const CadTree& t, std::size_t k) {
  if (k > t.depth()) structural("induced: level beyond the tree depth");
  CadTree out = t;
  VarOrder order = t.order_.prefix(k);
  auto emb = [&](const Polynomial& p) { return p.embed(order); };
  out.order_ = order;
  out.levels_.resize(k);
  for (auto& lv : out.levels_) {
    for (auto& p : lv) p = emb(p);
  }
  out.inputs_.clear();
  out.input_factors_.clear();
  for (std::size_t i = 0; i < t.inputs_.size(); ++i) {
    if (t.inputs_[i].level() > k) continue;
    out.inputs_.push_back(emb(t.inputs_[i]));
    out.input_factors_.push_back(t.input_factors_[i]);
  }
  out.closed_levels_ = std::min(t.closed_levels_, k);
  truncate(out.root_, k);
  for (auto& c : out.root_.children) map_polys(c, emb);
  return out;
}

namespace {

// Re-lifts `orig` over the context point, keeping the children whose
// extension descriptors match.
void relift(const CadNode& orig, CadNode& out, AlgebraicContext& ctx, const CadTree& t, std::size_t depth,
            const CadOptions& opts) {
  if (depth == t.depth() || orig.children.empty()) return;
  Stack st = compute_stack(ctx, t.level_polys()[depth]);
  auto specs = make_children(ctx, st, t.level_polys()[depth]);
  for (auto& spec : specs) {
    auto it = std::find_if(orig.children.begin(), orig.children.end(),
                           [&](const CadNode& c) { return c.ext == spec.ext; });
    if (it == orig.children.end()) continue;
    CadNode child;
    child.ext = spec.ext;
    child.signs = spec.signs;
    AlgebraicContext cctx = ctx;
    bool exact = true;
    materialize(child, spec, st, ctx, cctx, opts, exact);
    relift(*it, child, cctx, t, depth + 1, opts);
    out.children.push_back(std::move(child));
  }
}

}  // namespace

CadTree specialize_tree(const CadTree& t, const std::vector<Rational>& values) {
  std::size_t j = values.size();
  if (j == 0) return t;
  if (j > t.depth()) structural("specialize_tree: more values than variables");
  AlgebraicContext ctx(t.order_);
  const CadNode* node = &t.root_;
  std::vector<std::vector<int>> prefix_signs;
  for (std::size_t d = 0; d < j; ++d) {
    Stack st = compute_stack(ctx, t.levels_[d]);
    auto specs = make_children(ctx, st, t.levels_[d]);
    // Locate the value among the roots.
    std::size_t pos = 2 * st.roots.size();
    for (std::size_t i = 0; i < st.roots.size(); ++i) {
      int c = ctx.compare_root(values[d], st.roots[i]);
      if (c < 0) {
        pos = 2 * i;
        break;
      }
      if (c == 0) {
        pos = 2 * i + 1;
        break;
      }
    }
    ChildSpec& spec = specs[pos];
    auto it = std::find_if(node->children.begin(), node->children.end(),
                           [&](const CadNode& c) { return c.ext == spec.ext; });
    if (it == node->children.end()) structural("specialize_tree: point lies in no cell of the tree");
    node = &*it;
    prefix_signs.push_back(node->signs);
    ctx.push_rational(values[d]);
  }
  CadOptions opts;
  opts.refinement_budget = ctx.budget();
  CadNode root;
  relift(*node, root, ctx, t, j, opts);

  std::vector<std::string> names(t.order_.names().begin() + static_cast<std::ptrdiff_t>(j), t.order_.names().end());
  VarOrder order(names);
  std::vector<std::optional<Rational>> assign(t.depth());
  for (std::size_t d = 0; d < j; ++d) assign[d] = values[d];
  auto spec_poly = [&](const Polynomial& p) { return p.substitute(assign).embed(order); };

  CadTree out;
  out.order_ = order;
  out.partial_ = t.partial_;
  out.closed_levels_ = t.closed_levels_ > j ? t.closed_levels_ - j : 0;
  for (std::size_t d = j; d < t.depth(); ++d) {
    std::vector<Polynomial> lv;
    for (const auto& p : t.levels_[d]) lv.push_back(spec_poly(p));
    out.levels_.push_back(std::move(lv));
  }
  for (std::size_t i = 0; i < t.inputs_.size(); ++i) {
    out.inputs_.push_back(spec_poly(t.inputs_[i]));
    Factorization f;
    f.sign = t.input_factors_[i].sign;
    for (const auto& fac : t.input_factors_[i].factors) {
      if (fac.level < j) {
        int s = prefix_signs[fac.level][fac.index];
        if (s == 0) f.sign = 0;
        else if (s < 0 && fac.exponent % 2 == 1) f.sign = -f.sign;
      } else {
        f.factors.push_back({fac.level - j, fac.index, fac.exponent});
      }
    }
    if (f.sign == 0) f.factors.clear();
    out.input_factors_.push_back(std::move(f));
  }
  for (auto& c : root.children) map_polys(c, spec_poly);
  out.root_ = std::move(root);
  return out;
}

std::vector<CadCell> cells_satisfying(const CadTree& t, const SemiAlgebraicSystem& s) {
  std::vector<Polynomial> normal;
  std::vector<int> flips;
  for (const auto& p : t.inputs()) {
    int sg = 1;
    normal.push_back(p.is_zero() ? p : normalize(p, &sg));
    flips.push_back(sg);
  }
  struct Cond {
    std::size_t input;
    int flip;
    unsigned mask;
  };
  std::vector<std::vector<Cond>> disj;
  for (const auto& b : s.disjuncts()) {
    if (b.is_false()) continue;
    std::vector<Cond> conds;
    for (const auto& [p0, mask] : b.masks()) {
      int sg = 1;
      Polynomial p = normalize(p0.embed(t.order()), &sg);
      auto it = std::find(normal.begin(), normal.end(), p);
      if (it == normal.end()) structural("cells_satisfying: polynomial " + p.to_string() + " is not a CAD input");
      std::size_t idx = static_cast<std::size_t>(it - normal.begin());
      conds.push_back({idx, sg * flips[idx], mask});
    }
    disj.push_back(std::move(conds));
  }
  std::vector<CadCell> out;
  for (auto& cell : t.cells()) {
    for (const auto& d : disj) {
      bool ok = std::all_of(d.begin(), d.end(),
                            [&](const Cond& c) { return (c.mask & sign_bit(c.flip * cell.signs[c.input])) != 0; });
      if (ok) {
        out.push_back(cell);
        break;
      }
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> locate(const CadTree& t, const SamplePoint& pt) {
  if (pt.size() > t.depth()) structural("locate: point has more coordinates than the tree");
  AlgebraicContext ctx(t.order());
  const CadNode* node = &t.root();
  std::vector<std::size_t> path;
  for (std::size_t d = 0; d < pt.size(); ++d) {
    Stack st = compute_stack(ctx, t.level_polys()[d]);
    auto specs = make_children(ctx, st, t.level_polys()[d]);
    KRoot x;
    if (pt[d].is_rational()) {
      x.exact = true;
      x.value = pt[d].rational_value();
    } else {
      for (const auto& c : pt[d].polynomial().coeffs()) x.h.push_back(Polynomial::constant(t.order(), c));
      x.lo = pt[d].lo();
      x.hi = pt[d].hi();
      x.sign_lo = pt[d].polynomial().sign_at(x.lo);
    }
    std::size_t pos = 2 * st.roots.size();
    for (std::size_t i = 0; i < st.roots.size(); ++i) {
      int c = ctx.compare_roots(x, st.roots[i]);
      if (c <= 0) {
        pos = c < 0 ? 2 * i : 2 * i + 1;
        break;
      }
    }
    const ChildSpec& spec = specs[pos];
    auto it = std::find_if(node->children.begin(), node->children.end(),
                           [&](const CadNode& c) { return c.ext == spec.ext; });
    if (it == node->children.end()) return std::nullopt;
    path.push_back(static_cast<std::size_t>(it - node->children.begin()));
    node = &*it;
    ctx.push(pt[d]);
  }
  return path;
}

bool cell_contains(const CadTree& t, const std::vector<std::size_t>& path, const std::vector<Rational>& point) {
  AlgebraicContext ctx(t.order());
  const CadNode* n = &t.root();
  auto kth_root_cmp = [&](const RootRef& r, const Rational& x) -> std::optional<int> {
    KPoly kp = ctx.to_kpoly(r.poly, ctx.size(), ctx.size());
    auto roots = ctx.real_roots(kp);
    if (r.root_index == 0 || r.root_index > roots.size()) return std::nullopt;
    return ctx.compare_root(x, roots[r.root_index - 1]);
  };
  for (std::size_t d = 0; d < path.size(); ++d) {
    n = &n->children.at(path[d]);
    const Rational& x = point.at(d);
    const CellExtension& e = n->ext;
    if (e.kind == CellExtension::Section) {
      auto c = kth_root_cmp(e.section, x);
      if (!c || *c != 0) return false;
    } else {
      if (e.lower.kind == CellBound::Root) {
        auto c = kth_root_cmp(e.lower.root, x);
        if (!c || *c <= 0) return false;
      }
      if (e.upper.kind == CellBound::Root) {
        auto c = kth_root_cmp(e.upper.root, x);
        if (!c || *c >= 0) return false;
      }
    }
    ctx.push_rational(x);
  }
  return true;
}

// ---- satisfiability ----

BasicSystem eliminate_linear(const BasicSystem& b, const std::vector<bool>& eliminable) {
  BasicSystem cur = b;
  while (!cur.is_false()) {
    bool found = false;
    for (const auto& [p, mask] : cur.masks()) {
      if (mask != kSignZero) continue;
      for (std::size_t v = p.num_vars(); v-- > 0;) {
        if (v >= eliminable.size() || !eliminable[v] || p.degree(v) != 1) continue;
        Polynomial c = p.coefficient(v, 1);
        if (!c.is_constant()) continue;
        Polynomial rest = p - c * Polynomial::variable(p.order(), v);
        Polynomial expr = rest * (Rational(-1) / c.constant_value());
        BasicSystem next(cur.order());
        for (const auto& [q, m] : cur.masks()) {
          if (q == p) continue;
          next.add_mask(q.substitute(v, expr), m);
        }
        cur = std::move(next);
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  return cur;
}

bool satisfiable(const BasicSystem& b0, const CadOptions& options) {
  if (b0.is_false()) return false;
  if (b0.is_true()) return true;
  BasicSystem b = eliminate_linear(b0, std::vector<bool>(b0.order().size(), true));
  if (b.is_false()) return false;
  if (b.is_true()) return true;
  // Group conditions by connected variables.
  std::size_t nv = b.order().size();
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [p, m] : b.masks()) {
    (void)m;
    auto sup = p.support();
    std::size_t first = nv;
    for (std::size_t v = 0; v < nv; ++v) {
      if (!sup[v]) continue;
      if (first == nv) first = v;
      else parent[find(v)] = find(first);
    }
  }
  std::map<std::size_t, std::vector<std::pair<Polynomial, unsigned>>> groups;
  for (const auto& [p, m] : b.masks()) groups[find(static_cast<std::size_t>(p.main_var()))].emplace_back(p, m);
  for (auto& [rep, conds] : groups) {
    std::vector<std::string> names;
    for (std::size_t v = 0; v < nv; ++v) {
      if (find(v) == rep) {
        bool used = false;
        for (const auto& [p, m] : conds) used = used || p.depends_on(v);
        if (used) names.push_back(b.order().name(v));
      }
    }
    VarOrder order(names);
    BasicSystem sub(order);
    std::vector<Polynomial> polys;
    for (const auto& [p, m] : conds) {
      Polynomial q = p.embed(order);
      sub.add_mask(q, m);
      polys.push_back(q);
    }
    CadTree t = CadBuilder(order, polys, options).build_partial(SemiAlgebraicSystem::from_basic(sub), 0, true);
    if (t.root().children.empty()) return false;
  }
  return true;
}

bool is_empty(const SemiAlgebraicSystem& s, const CadOptions& options) {
  for (const auto& b : s.disjuncts()) {
    if (satisfiable(b, options)) return false;
  }
  return true;
}

}  // namespace salp
