#pragma once

// Clifford self-check suites run by `dwl clifford-selfcheck`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dwl/clifford.hpp"
#include "io.hpp"

namespace dwl::selfcheck {

using Product = std::function<clifford::MultiVector(const clifford::MultiVector&, const clifford::MultiVector&)>;

struct Suite {
  std::string name;
  bool passed = true;
  long checks = 0;
  double max_error = 0;
  io::Json counterexample;  // null when passed
};

struct Report {
  int dim = 0;
  std::vector<Suite> suites;
  bool passed() const;
  io::Json json() const;
};

io::Json multivector_json(const clifford::MultiVector& m);

// Suites: anticommutation, associativity, reverse, double_cover,
// representation, chiral. `product` defaults to the library product; tests
// substitute a corrupted one.
Report run(int dim, std::uint64_t seed = 1, Product product = {});

}  // namespace dwl::selfcheck
