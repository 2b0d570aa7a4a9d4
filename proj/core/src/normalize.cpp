#include <algorithm>
#include <cstdio>
#include <string>

#include "folner/operator_spec.hpp"

namespace folner {

namespace {

void append_num(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // -0 normalized to 0
  out += buf;
}

void append_complex(std::string& out, Complex z) {
  append_num(out, z.real());
  out += ',';
  append_num(out, z.imag());
}

// Plain structural print; assumes the tree is already in the shape the caller
// wants to compare (normalized() produces that shape).
std::string structural_key(const OperatorSpec& spec) {
  const Node::Variant& v = spec.node().data();
  const char* lat = lattice_name(spec.lattice());
  std::string out;
  if (std::holds_alternative<ShiftNode>(v)) {
    out = std::string("sh@") + lat;
  } else if (const auto* a = std::get_if<AdjointNode>(&v)) {
    out = "adj(" + structural_key(a->child) + ")";
  } else if (const auto* d = std::get_if<DiagonalNode>(&v)) {
    out = std::string("dg@") + lat + "[" + d->rule.name() + "]";
  } else if (const auto* t = std::get_if<ToeplitzNode>(&v)) {
    out = std::string("tp@") + lat + "[" + std::to_string(t->c0) + ";";
    for (std::size_t p = 0; p < t->coeffs.size(); ++p) {
      if (p) out += ';';
      append_complex(out, t->coeffs[p]);
    }
    out += ']';
  } else if (const auto* am = std::get_if<AlmostMathieuNode>(&v)) {
    out = "am[";
    append_num(out, am->lambda);
    out += ';';
    append_num(out, am->omega);
    out += ';';
    append_num(out, am->theta);
    out += ']';
  } else if (const auto* cz = std::get_if<CuntzNode>(&v)) {
    out = "cz[" + std::to_string(cz->branching) + "," + std::to_string(cz->branch) + "]";
  } else if (const auto* s = std::get_if<SumNode>(&v)) {
    out = "sum(";
    for (std::size_t t2 = 0; t2 < s->children.size(); ++t2) {
      if (t2) out += ',';
      out += structural_key(s->children[t2]);
    }
    out += ')';
  } else if (const auto* p = std::get_if<ProductNode>(&v)) {
    out = "pr(" + structural_key(p->lhs) + "," + structural_key(p->rhs) + ")";
  } else if (const auto* sc = std::get_if<ScaleNode>(&v)) {
    out = "sc[";
    append_complex(out, sc->alpha);
    out += "](" + structural_key(sc->child) + ")";
  } else if (const auto* d = std::get_if<DirectSumNode>(&v)) {
    out = "ds(" + structural_key(d->lhs) + "," + structural_key(d->rhs) + ")";
  } else if (const auto* f = std::get_if<FiniteRankNode>(&v)) {
    out = "fr[" + std::to_string(f->block.rows()) + ";";
    for (Eigen::Index i = 0; i < f->block.rows(); ++i)
      for (Eigen::Index j = 0; j < f->block.cols(); ++j) {
        if (i || j) out += ';';
        append_complex(out, f->block(i, j));
      }
    out += "](" + structural_key(f->child) + ")";
  }
  return out;
}

OperatorSpec sorted_sum(std::vector<OperatorSpec> children) {
  if (children.size() == 1) return children[0];
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(children.size());
  for (std::size_t t = 0; t < children.size(); ++t)
    keys.emplace_back(structural_key(children[t]), t);
  std::sort(keys.begin(), keys.end());
  std::vector<OperatorSpec> ordered;
  ordered.reserve(children.size());
  for (const auto& [key, t] : keys) ordered.push_back(children[t]);
  return OperatorSpec::sum(std::move(ordered));
}

// Adjoint of an already-normalized tree, pushed one level and recursed.
OperatorSpec push_adjoint(const OperatorSpec& spec) {
  const Node::Variant& v = spec.node().data();
  if (std::holds_alternative<ShiftNode>(v) || std::holds_alternative<CuntzNode>(v))
    return OperatorSpec::adjoint(spec);
  if (const auto* a = std::get_if<AdjointNode>(&v)) return a->child;
  if (const auto* d = std::get_if<DiagonalNode>(&v))
    return OperatorSpec::diagonal(d->rule.conjugated(), spec.lattice());
  if (const auto* t = std::get_if<ToeplitzNode>(&v)) {
    std::vector<Complex> rev(t->coeffs.rbegin(), t->coeffs.rend());
    for (Complex& c : rev) c = std::conj(c);
    const int c0 = static_cast<int>(t->coeffs.size()) - 1 - t->c0;
    return OperatorSpec::toeplitz(std::move(rev), c0, spec.lattice());
  }
  if (std::holds_alternative<AlmostMathieuNode>(v)) return spec;
  if (const auto* s = std::get_if<SumNode>(&v)) {
    std::vector<OperatorSpec> children;
    children.reserve(s->children.size());
    for (const OperatorSpec& c : s->children) children.push_back(push_adjoint(c));
    return sorted_sum(std::move(children));
  }
  if (const auto* p = std::get_if<ProductNode>(&v))
    return OperatorSpec::product(push_adjoint(p->rhs), push_adjoint(p->lhs));
  if (const auto* sc = std::get_if<ScaleNode>(&v))
    return OperatorSpec::scale(std::conj(sc->alpha), push_adjoint(sc->child));
  if (const auto* d = std::get_if<DirectSumNode>(&v))
    return OperatorSpec::direct_sum(push_adjoint(d->lhs), push_adjoint(d->rhs));
  if (const auto* f = std::get_if<FiniteRankNode>(&v))
    return OperatorSpec::finite_rank_perturbation(push_adjoint(f->child), f->block.adjoint());
  throw StructureError("push_adjoint: unhandled node kind");
}

}  // namespace

OperatorSpec normalized(const OperatorSpec& spec) {
  const Node::Variant& v = spec.node().data();
  if (const auto* a = std::get_if<AdjointNode>(&v)) return push_adjoint(normalized(a->child));
  if (const auto* s = std::get_if<SumNode>(&v)) {
    std::vector<OperatorSpec> flat;
    for (const OperatorSpec& c : s->children) {
      OperatorSpec nc = normalized(c);
      if (const auto* inner = std::get_if<SumNode>(&nc.node().data())) {
        for (const OperatorSpec& ic : inner->children) flat.push_back(ic);
      } else {
        flat.push_back(std::move(nc));
      }
    }
    return sorted_sum(std::move(flat));
  }
  if (const auto* p = std::get_if<ProductNode>(&v))
    return OperatorSpec::product(normalized(p->lhs), normalized(p->rhs));
  if (const auto* sc = std::get_if<ScaleNode>(&v))
    return OperatorSpec::scale(sc->alpha, normalized(sc->child));
  if (const auto* d = std::get_if<DirectSumNode>(&v))
    return OperatorSpec::direct_sum(normalized(d->lhs), normalized(d->rhs));
  if (const auto* f = std::get_if<FiniteRankNode>(&v))
    return OperatorSpec::finite_rank_perturbation(normalized(f->child), f->block);
  return spec;  // leaves
}

OperatorSpec formal_adjoint(const OperatorSpec& spec) { return push_adjoint(normalized(spec)); }

std::string canonical_key(const OperatorSpec& spec) { return structural_key(normalized(spec)); }

bool is_formally_selfadjoint(const OperatorSpec& spec) {
  const OperatorSpec n = normalized(spec);
  return structural_key(n) == structural_key(push_adjoint(n));
}

}  // namespace folner
