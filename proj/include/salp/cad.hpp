// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "salp/poly.hpp"
#include "salp/realalg.hpp"
#include "salp/sas.hpp"

namespace salp {

struct CadOptions {
  std::size_t max_projection = 512;  // total projection factors
  std::size_t max_vars = 10;
  unsigned refinement_budget = 64;
  // Levels 1..k are closed under derivatives in their main variable, which
  // makes sign conditions on the level polynomials describe cells exactly.
  std::size_t derivative_closed_levels = 0;
  // Compute Q-polynomial samples for sections over algebraic bases.
  bool algebraic_samples = true;
};

// k-th (1-based) distinct real root of poly in its main variable over the
// base cell.
struct RootRef {
  Polynomial poly;
  unsigned root_index = 0;
  bool operator==(const RootRef& o) const { return root_index == o.root_index && poly == o.poly; }
};

struct CellBound {
  enum Kind { NegInf, PosInf, Root };
  Kind kind = NegInf;
  RootRef root;
  bool operator==(const CellBound& o) const {
    return kind == o.kind && (kind != Root || root == o.root);
  }
};

struct CellExtension {
  enum Kind { Section, Sector };
  Kind kind = Sector;
  RootRef section;         // when Section
  CellBound lower, upper;  // when Sector
  bool operator==(const CellExtension& o) const;
  std::string to_string() const;
};

struct CadNode {
  CellExtension ext;
  RealAlgebraicNumber sample;
  std::vector<int> signs;  // level polynomials of this node's level
  std::vector<CadNode> children;
};

struct CadCell {
  std::vector<CellExtension> stack;
  SamplePoint sample;
  std::vector<int> signs;  // input polynomials
  std::vector<std::size_t> path;  // child indices from the root
  std::size_t dimension() const;
};

// Input p = sign * prod factor^exponent over level polynomials.
struct Factorization {
  int sign = 1;
  struct Factor {
    std::size_t level, index;
    unsigned exponent;
  };
  std::vector<Factor> factors;
};

class CadTree {
 public:
  const VarOrder& order() const { return order_; }
  std::size_t depth() const { return order_.size(); }
  const std::vector<Polynomial>& inputs() const { return inputs_; }
  // level_polys()[j] holds the projection factors with main variable j.
  const std::vector<std::vector<Polynomial>>& level_polys() const { return levels_; }
  const CadNode& root() const { return root_; }
  std::size_t derivative_closed_levels() const { return closed_levels_; }
  bool partial() const { return partial_; }
  const std::vector<Factorization>& input_factorizations() const { return input_factors_; }

  std::vector<CadCell> cells() const;
  std::size_t num_cells() const;
  // Sizes of every stack (children count per node) at the given depth, in
  // tree order; depth 0 is the root stack.
  std::vector<std::size_t> stack_sizes(std::size_t depth) const;

  // Nodes at a given depth with their paths, in tree order.
  std::vector<std::pair<std::vector<std::size_t>, const CadNode*>> nodes_at(std::size_t depth) const;
  const CadNode& node(const std::vector<std::size_t>& path) const;
  // Sign of level polynomial (level, index) along a path reaching that level.
  int path_sign(const std::vector<std::size_t>& path, std::size_t level, std::size_t index) const;
  // Sign of input i on the cell at the end of path (path length >= input level).
  int input_sign(const std::vector<std::size_t>& path, std::size_t input) const;
  SamplePoint sample(const std::vector<std::size_t>& path) const;
  // Sign conditions on all level polynomials of levels < path.size().
  // Exact for levels within the derivative-closed range.
  BasicSystem describe(const std::vector<std::size_t>& path) const;

  std::string to_json() const;

 private:
  friend class CadBuilder;
  friend CadTree induced(const CadTree& t, std::size_t k);
  friend CadTree specialize_tree(const CadTree& t, const std::vector<Rational>& values);

  VarOrder order_;
  std::vector<Polynomial> inputs_;
  std::vector<Factorization> input_factors_;
  std::vector<std::vector<Polynomial>> levels_;
  CadNode root_;
  std::size_t closed_levels_ = 0;
  bool partial_ = false;
};

// Builds (partial) CADs from a polynomial set.
class CadBuilder {
 public:
  CadBuilder(VarOrder order, std::vector<Polynomial> inputs, CadOptions options = {});

  // Full CAD, sign-invariant for every input.
  CadTree build();
  // Cells inside Z(constraint) only. Levels up to keep_levels are never
  // pruned. With first_witness, each depth-keep_levels node keeps at most
  // one satisfying descendant leaf.
  CadTree build_partial(const SemiAlgebraicSystem& constraint, std::size_t keep_levels = 0,
                        bool first_witness = false);

 private:
  CadTree run(const SemiAlgebraicSystem* constraint, std::size_t keep, bool first_witness);

  VarOrder order_;
  std::vector<Polynomial> inputs_;
  CadOptions options_;
};

CadTree build_cad(const std::vector<Polynomial>& polys, const VarOrder& order, const CadOptions& options = {});

// Collins-Hong projection of a set with main variable var: the nonconstant
// content-free factors, deduplicated.
std::vector<Polynomial> projection(const std::vector<Polynomial>& polys, std::size_t var);

// -1, 0, 1 by sibling order at the first differing level.
int cell_compare(const CadCell& a, const CadCell& b);
CadTree induced(const CadTree& t, std::size_t k);
// Re-roots the tree at the cell containing (values..., *) over the remaining
// variables.
CadTree specialize_tree(const CadTree& t, const std::vector<Rational>& values);
std::vector<CadCell> cells_satisfying(const CadTree& t, const SemiAlgebraicSystem& s);

// Path of the cell containing a point prefix (coordinates for the first
// pt.size() variables); nullopt when a partial tree lacks that cell.
std::optional<std::vector<std::size_t>> locate(const CadTree& t, const SamplePoint& pt);

// Does the point lie in the cell (checked against the extension chain)?
bool cell_contains(const CadTree& t, const std::vector<std::size_t>& path, const std::vector<Rational>& point);

// Eliminates variables through equations linear in them with constant
// coefficients; vars with eliminable[v] false are kept.
BasicSystem eliminate_linear(const BasicSystem& b, const std::vector<bool>& eliminable);
// Real satisfiability by CAD (after linear elimination and splitting into
// independent variable groups).
bool satisfiable(const BasicSystem& b, const CadOptions& options = {});
bool is_empty(const SemiAlgebraicSystem& s, const CadOptions& options = {});

}  // namespace salp
