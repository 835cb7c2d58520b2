// Copyright 2026 The resilient-te Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <cmath>
#include <sstream>

#include "rte/lp.h"

namespace rte {
namespace lp {
namespace {

// LP-format names may not contain most punctuation; keep [A-Za-z0-9_].
std::string sanitize(const std::string& name, const char* prefix, int index) {
  std::string out;
  for (char c : name) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) {
    out = prefix + std::to_string(index) + (out.empty() ? "" : "_" + out);
  }
  return out;
}

void write_terms(std::ostringstream& os, const std::vector<Term>& terms,
                 const std::vector<std::string>& names) {
  bool first = true;
  for (const Term& t : terms) {
    if (!first || t.coef < 0) os << (t.coef < 0 ? " - " : " + ");
    os << std::abs(t.coef) << " " << names[t.var];
    first = false;
  }
  if (first) os << " 0 " << (names.empty() ? "x" : names[0]);
}

}  // namespace

std::string to_lp_text(const LinearProgram& lp) {
  std::vector<std::string> names;
  for (int j = 0; j < lp.num_variables(); ++j) {
    names.push_back(sanitize(lp.variable(j).name, "x", j) + "_" +
                    std::to_string(j));
  }
  std::ostringstream os;
  os.precision(17);
  os << (lp.objective_sense() == ObjSense::kMax ? "Maximize" : "Minimize")
     << "\n obj:";
  write_terms(os, lp.objective(), names);
  os << "\nSubject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const Row& r = lp.row(i);
    os << " " << sanitize(r.name, "r", i) << "_" << i << ":";
    write_terms(os, r.terms, names);
    os << (r.sense == Sense::kLe ? " <= " : r.sense == Sense::kGe ? " >= " : " = ")
       << r.rhs << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < lp.num_variables(); ++j) {
    const Variable& v = lp.variable(j);
    if (v.binary) continue;
    if (std::isinf(v.lower) && std::isinf(v.upper)) {
      os << " " << names[j] << " free\n";
      continue;
    }
    os << " ";
    if (std::isinf(v.lower)) os << "-inf"; else os << v.lower;
    os << " <= " << names[j] << " <= ";
    if (std::isinf(v.upper)) os << "+inf"; else os << v.upper;
    os << "\n";
  }
  bool any_bin = false;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (!lp.variable(j).binary) continue;
    if (!any_bin) os << "Binaries\n";
    any_bin = true;
    os << " " << names[j] << "\n";
  }
  os << "End\n";
  return os.str();
}

}  // namespace lp
}  // namespace rte
