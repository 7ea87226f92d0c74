#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rspace/rootsys.hpp"

namespace rspace {

using ParamMap = std::map<std::string, long>;

struct ParamRange {
  std::string name;
  long lo = 0;
  long hi = 0;
};

/// One curated symmetric space: restricted root family, rank rule and
/// multiplicities, plus an independent closed form for
/// dim 𝔪 = rank + Σ m(λ) that gates every instantiation.
struct CatalogEntry {
  std::string name;     // template, e.g. "SU(n)/SO(n)"
  std::string example;  // a concrete instance, e.g. "SU(3)/SO(3)"
  std::string family_rule;
  std::string rank_rule;
  std::string mult_rule;
  std::string dim_rule;
  std::vector<ParamRange> params;  // documented test ranges
  std::function<std::string(const ParamMap&)> constraint_error;  // empty string = ok
  std::function<RootSystem(const ParamMap&)> build;
  std::function<long(const ParamMap&)> dim_m;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Instantiates an entry. `name` is either a template name (with the
/// parameters supplied in `params`) or a concrete name such as
/// "SU(3)/SO(3)" that is pattern-matched against the templates. The result
/// passes validate() and the dimension identity, or this throws.
RootSystem lookup(const std::string& name, const ParamMap& params = {});

/// Reads a root system from the text format:
///   ambient_dim <d>
///   rank <r>
///   simple <d rational coordinates>            (r lines)
///   root <d rational coordinates> mult <positive integer>
/// '#' starts a comment; rationals are "p/q" or integers. Parse errors
/// report the line; validation failures list every violation.
RootSystem load_custom(const std::string& path);

}  // namespace rspace
