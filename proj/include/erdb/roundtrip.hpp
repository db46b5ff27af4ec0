#pragma once

#include <string>
#include <vector>

#include "erdb/diagnostic.hpp"
#include "erdb/model.hpp"
#include "erdb/transform.hpp"

namespace erdb {

// Canonical form of a model, erasing exactly what a forward/reverse trip
// cannot preserve:
//   - element lists sorted by name
//   - entity attributes ordered designated key, other keys, simple,
//     multivalued (each group in declaration order)
//   - weak entities' identifying relationship renamed <Weak>Of
//   - 1:N relationships written N-side first, 1:1 subtype first
ERModel normalize(const ERModel& m);

// One line per difference between two models, keyed by element name.
// Empty when they are equal.
std::vector<std::string> model_diff(const ERModel& expected, const ERModel& actual);

// The default policy, PreferRegularRelation, and every explicit assignment
// of sides to the model's 1:1 relationships (at most 2^k configurations).
std::vector<TransformConfig> sog_configurations(const ERModel& m, bool extensions = false);

struct RoundTripReport {
  bool ok = false;
  std::string forward_text;  // first forward output
  std::string second_text;   // forward output of the reversed model
  std::vector<std::string> differences;
  std::vector<Diagnostic> diagnostics;
};

// forward -> emit -> parse -> reverse -> forward again. Passes when the
// reversed model equals normalize(m) and both forward outputs are
// byte-identical. Never throws for models that fail along the way; the
// failure is reported instead.
RoundTripReport roundtrip_check(const ERModel& m, const TransformConfig& cfg = {});

}  // namespace erdb
