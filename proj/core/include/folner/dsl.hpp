#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folner/operator_spec.hpp"
#include "folner/zoo.hpp"

namespace folner {

// Parses the tree-shaped operator DSL. Node field "op" is one of {"shift",
// "adjoint", "diagonal", "toeplitz", "almost_mathieu", "cuntz", "sum",
// "product", "scale", "direct_sum", "finite_rank"}; children live under
// "args", numeric parameters by name. Documents above 1 MiB are rejected.
// Violations raise DslError carrying the JSON pointer of the offending node.
OperatorSpec parse_operator(const std::string& json_text);

// Canonical JSON for the tree; parse_operator(print_operator(s)) reproduces
// the entry values exactly.
std::string print_operator(const OperatorSpec& spec);

// FNV-1a 64-bit hash of the canonical JSON, as 16 hex digits.
std::string spec_hash(const OperatorSpec& spec);
std::string spec_hash(std::span<const OperatorSpec> specs);

// Resolves a CLI operator source: "zoo:<name>" addresses the catalog
// ("zoo:shift", "zoo:toeplitz:1,0,1", "zoo:am:1.0:0.618:0", "zoo:cuntz:2:0",
// "zoo:cuntz-family:2", "zoo:diag:periodic:0,1", "zoo:diag:dense_in:0,1:7");
// anything starting with '{' is inline DSL JSON. A cuntz family expands to
// one entry per isometry. c0_override applies to even-length Toeplitz lists.
std::vector<ZooEntry> resolve_operator_source(const std::string& source,
                                              std::optional<int> c0_override = std::nullopt);

}  // namespace folner
