// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/loopir.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "salp/error.hpp"

namespace salp {

std::vector<std::string> Region::params() const {
  return {order.names().begin(), order.names().begin() + static_cast<std::ptrdiff_t>(num_params)};
}

std::vector<std::string> PerfectNest::params() const {
  return {order.names().begin(), order.names().begin() + static_cast<std::ptrdiff_t>(num_params)};
}

std::vector<std::string> PerfectNest::iter_vars() const {
  std::vector<std::string> out;
  for (const auto& l : loops) out.push_back(l.var);
  return out;
}

// ---- printing ----

std::string print_bound(const Bound& b) {
  switch (b.kind) {
    case Bound::NegInf: return "-inf";
    case Bound::PosInf: return "+inf";
    case Bound::Root: return "root(" + b.poly.to_string() + ", " + std::to_string(b.root_index) + ")";
    default: return b.poly.to_string();
  }
}

namespace {

std::string print_access(const AccessFunction& a) {
  std::string s = a.array;
  for (const auto& g : a.indices) s += "[" + g.to_string() + "]";
  return s;
}

std::string reduction_op(const Statement& s) {
  switch (s.reduction) {
    case Reduction::Assign: return "=";
    case Reduction::Sum: return "+=";
    case Reduction::Max: return "max=";
    case Reduction::Min: return "min=";
    default: return s.reduction_name + "=";
  }
}

std::string open_suffix(const Loop& l) {
  if (!l.lower_closed && !l.upper_closed) return " open both";
  if (!l.lower_closed) return " open left";
  if (!l.upper_closed) return " open right";
  return "";
}

void print_nodes(const std::vector<LoopNode>& nodes, int indent, std::ostringstream& os) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const LoopNode& n = nodes[i];
    bool last = i + 1 == nodes.size();
    os << pad << (n.loop.parallel ? "parallel " : "") << "loop " << n.loop.var << ": " << print_bound(n.loop.lower)
       << ".." << print_bound(n.loop.upper) << open_suffix(n.loop) << (last ? ";\n" : " {\n");
    int inner = last ? indent : indent + 2;
    if (n.body) {
      std::string ipad(static_cast<std::size_t>(inner), ' ');
      for (const auto& l : n.body->lets) os << ipad << "let " << l.var << " = " << print_bound(l.value) << ";\n";
      os << ipad << "stmt: " << print_statement(n.body->stmt) << "\n";
    } else {
      print_nodes(n.children, inner, os);
    }
    if (!last) os << pad << "}\n";
  }
}

nlohmann::json bound_json(const Bound& b) {
  switch (b.kind) {
    case Bound::NegInf: return "-inf";
    case Bound::PosInf: return "+inf";
    case Bound::Root: return {{"root", b.poly.to_string()}, {"index", b.root_index}};
    default: return b.poly.to_string();
  }
}

nlohmann::json node_json(const LoopNode& n) {
  nlohmann::json j;
  j["var"] = n.loop.var;
  j["lower"] = bound_json(n.loop.lower);
  j["upper"] = bound_json(n.loop.upper);
  j["lower_closed"] = n.loop.lower_closed;
  j["upper_closed"] = n.loop.upper_closed;
  j["parallel"] = n.loop.parallel;
  if (n.body) {
    nlohmann::json lets = nlohmann::json::array();
    for (const auto& l : n.body->lets) lets.push_back({{"var", l.var}, {"value", bound_json(l.value)}});
    j["body"] = {{"lets", lets}, {"stmt", print_statement(n.body->stmt)}};
  } else {
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& c : n.children) kids.push_back(node_json(c));
    j["children"] = kids;
  }
  return j;
}

}  // namespace

std::string print_statement(const Statement& s) {
  std::string out = print_access(s.write) + " " + reduction_op(s) + " " + s.combinator + "(";
  for (std::size_t i = 0; i < s.reads.size(); ++i) {
    if (i) out += ", ";
    out += print_access(s.reads[i]);
  }
  return out + ");";
}

std::string print_program(const LoopProgram& prog) {
  std::ostringstream os;
  for (std::size_t r = 0; r < prog.regions.size(); ++r) {
    const Region& reg = prog.regions[r];
    if (r) os << "\n";
    os << "param";
    auto ps = reg.params();
    for (std::size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : " ") << ps[i];
    os << ": " << reg.constraint.to_string() << ";\n";
    print_nodes(reg.loops, 0, os);
  }
  return os.str();
}

std::string program_to_json(const LoopProgram& prog) {
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& reg : prog.regions) {
    nlohmann::json loops = nlohmann::json::array();
    for (const auto& n : reg.loops) loops.push_back(node_json(n));
    regions.push_back({{"params", reg.params()}, {"constraint", reg.constraint.to_string()}, {"loops", loops}});
  }
  return nlohmann::json{{"regions", regions}}.dump(2);
}

// ---- nests ----

std::vector<PerfectNest> nests(const LoopProgram& prog) {
  std::vector<PerfectNest> out;
  for (const auto& reg : prog.regions) {
    std::vector<const Loop*> path;
    std::function<void(const LoopNode&)> walk = [&](const LoopNode& n) {
      path.push_back(&n.loop);
      if (n.body) {
        std::vector<std::string> names = reg.params();
        for (const Loop* l : path) names.push_back(l->var);
        for (const auto& l : n.body->lets) names.push_back(l.var);
        PerfectNest nest;
        nest.order = VarOrder(names);
        nest.num_params = reg.num_params;
        nest.params_constraint = reg.constraint.embed(nest.order.prefix(reg.num_params));
        auto eb = [&](Bound b) {
          if (!b.is_infinite()) b.poly = b.poly.embed(nest.order);
          return b;
        };
        for (const Loop* l : path) {
          Loop c = *l;
          c.lower = eb(c.lower);
          c.upper = eb(c.upper);
          nest.loops.push_back(std::move(c));
        }
        for (const auto& l : n.body->lets) nest.lets.push_back({l.var, eb(l.value)});
        nest.stmt = n.body->stmt;
        auto ea = [&](AccessFunction& a) {
          for (auto& g : a.indices) g = g.embed(nest.order);
        };
        ea(nest.stmt.write);
        for (auto& a : nest.stmt.reads) ea(a);
        out.push_back(std::move(nest));
      }
      for (const auto& c : n.children) walk(c);
      path.pop_back();
    };
    for (const auto& n : reg.loops) walk(n);
  }
  return out;
}

PerfectNest single_nest(const LoopProgram& prog) {
  auto ns = nests(prog);
  if (ns.size() != 1) {
    throw Error(ErrorCode::Semantic,
                "expected a single perfect loop nest, found " + std::to_string(ns.size()) + " statement paths");
  }
  return ns.front();
}

LoopProgram from_nest(const PerfectNest& nest) {
  Region r;
  r.order = nest.order;
  r.num_params = nest.num_params;
  r.constraint = nest.params_constraint.embed(nest.order);
  LoopNode* cur = nullptr;
  for (const auto& l : nest.loops) {
    LoopNode n;
    n.loop = l;
    if (!cur) {
      r.loops.push_back(std::move(n));
      cur = &r.loops.back();
    } else {
      cur->children.push_back(std::move(n));
      cur = &cur->children.back();
    }
  }
  if (!cur) structural("from_nest: a nest needs at least one loop");
  cur->body = Body{nest.lets, nest.stmt};
  LoopProgram p;
  p.regions.push_back(std::move(r));
  return p;
}

SemiAlgebraicSystem domain_system(const PerfectNest& nest) {
  VarOrder dom = nest.domain_order();
  BasicSystem b(dom);
  for (const auto& l : nest.loops) {
    Polynomial x = Polynomial::variable(dom, l.var);
    for (const Bound* bd : {&l.lower, &l.upper}) {
      if (bd->kind == Bound::Root) {
        throw Error(ErrorCode::Semantic, "loop '" + l.var + "' has a root(...) bound; the domain is not polynomial");
      }
    }
    if (l.lower.kind == Bound::Poly) b.add(x - l.lower.poly.embed(dom), l.lower_closed ? Rel::GE0 : Rel::GT0);
    if (l.upper.kind == Bound::Poly) b.add(l.upper.poly.embed(dom) - x, l.upper_closed ? Rel::GE0 : Rel::GT0);
  }
  return conj(nest.params_constraint.embed(dom), SemiAlgebraicSystem::from_basic(b));
}

bool in_domain(const PerfectNest& nest, const std::vector<Rational>& point) {
  return holds_at(domain_system(nest), point);
}

// ---- CAD to loops ----

Bound bound_from_root(const RootRef& r, std::size_t var, const VarOrder& order) {
  Polynomial p = r.poly.embed(order);
  if (p.degree(var) == 1 && r.root_index == 1) {
    Polynomial c = p.coefficient(var, 1);
    if (c.is_constant()) {
      Polynomial rest = p - c * Polynomial::variable(order, var);
      return Bound::of(rest * (Rational(-1) / c.constant_value()));
    }
  }
  return Bound::root(p, r.root_index);
}

namespace {

void build_nodes(const CadTree& t, const CadNode& node, std::vector<std::size_t>& path, const VarOrder& order,
                 const BodyFn& body, std::vector<LoopNode>& out) {
  std::size_t var = path.size();
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const CadNode& c = node.children[i];
    path.push_back(i);
    LoopNode n;
    n.loop.var = t.order().name(var);
    if (c.ext.kind == CellExtension::Section) {
      n.loop.lower = n.loop.upper = bound_from_root(c.ext.section, var, order);
    } else {
      auto cb = [&](const CellBound& b) {
        if (b.kind == CellBound::NegInf) return Bound::neg_inf();
        if (b.kind == CellBound::PosInf) return Bound::pos_inf();
        return bound_from_root(b.root, var, order);
      };
      n.loop.lower = cb(c.ext.lower);
      n.loop.upper = cb(c.ext.upper);
      n.loop.lower_closed = n.loop.upper_closed = false;
    }
    if (var + 1 == t.depth()) {
      Body b = body(path);
      for (auto& l : b.lets) {
        if (!l.value.is_infinite()) l.value.poly = l.value.poly.embed(order);
      }
      auto ea = [&](AccessFunction& a) {
        for (auto& g : a.indices) g = g.embed(order);
      };
      ea(b.stmt.write);
      for (auto& a : b.stmt.reads) ea(a);
      n.body = std::move(b);
      out.push_back(std::move(n));
    } else {
      build_nodes(t, c, path, order, body, n.children);
      if (!n.children.empty()) out.push_back(std::move(n));
    }
    path.pop_back();
  }
}

}  // namespace

LoopProgram cad_to_loops(const CadTree& t, std::size_t p, const BodyFn& body,
                         const std::vector<std::string>& let_names) {
  if (p >= t.depth()) structural("cad_to_loops: no loop variables below the parameters");
  std::vector<std::string> names = t.order().names();
  names.insert(names.end(), let_names.begin(), let_names.end());
  VarOrder order(names);
  VarOrder porder = t.order().prefix(p);

  // Exact parameter descriptions per depth-p node.
  auto pnodes = t.nodes_at(p);
  std::vector<SemiAlgebraicSystem> constraints(pnodes.size(), SemiAlgebraicSystem(order));
  if (p == 0) {
    constraints[0] = SemiAlgebraicSystem::universe(order);
  } else if (t.derivative_closed_levels() >= p) {
    CadTree tp = induced(t, p);
    for (std::size_t i = 0; i < pnodes.size(); ++i) {
      constraints[i].add_disjunct(embed(tp.describe(pnodes[i].first), order));
    }
  } else {
    std::vector<Polynomial> polys;
    for (std::size_t lvl = 0; lvl < p; ++lvl) {
      for (const auto& q : t.level_polys()[lvl]) polys.push_back(q.embed(porder));
    }
    CadOptions opts;
    opts.derivative_closed_levels = p;
    CadTree closed = build_cad(polys, porder, opts);
    for (const auto& [cpath, cnode] : closed.nodes_at(p)) {
      (void)cnode;
      auto where = locate(t, closed.sample(cpath));
      if (!where) continue;
      for (std::size_t i = 0; i < pnodes.size(); ++i) {
        if (pnodes[i].first == *where) constraints[i].add_disjunct(embed(closed.describe(cpath), order));
      }
    }
  }

  LoopProgram prog;
  for (std::size_t i = 0; i < pnodes.size(); ++i) {
    if (constraints[i].is_syntactically_empty()) continue;
    Region r;
    r.order = order;
    r.num_params = p;
    r.constraint = constraints[i];
    std::vector<std::size_t> path = pnodes[i].first;
    build_nodes(t, *pnodes[i].second, path, order, body, r.loops);
    if (!r.loops.empty()) prog.regions.push_back(std::move(r));
  }
  return prog;
}

LoopProgram cad_to_loops(const CadTree& t, std::size_t p, const Body& body) {
  std::vector<std::string> lets;
  for (const auto& l : body.lets) lets.push_back(l.var);
  return cad_to_loops(t, p, [&](const std::vector<std::size_t>&) { return body; }, lets);
}

}  // namespace salp
