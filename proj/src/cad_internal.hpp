// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <map>
#include <vector>

#include "salp/cad.hpp"

namespace salp::detail {

// Level polynomials collected during projection. Every polynomial is stored
// normalized and squarefree in its main variable.
class FactorSet {
 public:
  FactorSet(VarOrder order, std::size_t budget);

  // Splits p into content and squarefree factors, registering each one.
  Factorization add(const Polynomial& p);
  std::vector<std::vector<Polynomial>>& levels() { return levels_; }
  std::size_t total() const { return total_; }

 private:
  void add_factor(const Polynomial& f, unsigned exponent, Factorization& out);

  VarOrder order_;
  std::size_t budget_;
  std::size_t total_ = 0;
  std::vector<std::vector<Polynomial>> levels_;
  std::vector<std::map<Polynomial, std::size_t, PolyKeyLess>> index_;
};

// Runs the projection phase: closes levels < closed_levels under derivatives
// and projects every level down.
void project_all(FactorSet& fs, std::size_t nvars, std::size_t closed_levels);

}  // namespace salp::detail
