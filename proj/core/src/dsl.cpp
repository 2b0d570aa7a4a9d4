#include "folner/dsl.hpp"

#include <charconv>
#include <cstdint>

#include <nlohmann/json.hpp>

namespace folner {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxDocumentBytes = 1 << 20;

[[noreturn]] void fail(const std::string& pointer, const std::string& message) {
  throw DslError(pointer, message);
}

Complex parse_complex(const ordered_json& j, const std::string& pointer) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  fail(pointer, "expected a number or a [re, im] pair");
}

std::vector<Complex> parse_complex_list(const ordered_json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) fail(pointer, "expected a nonempty array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t t = 0; t < j.size(); ++t)
    out.push_back(parse_complex(j[t], pointer + "/" + std::to_string(t)));
  return out;
}

Lattice parse_lattice(const ordered_json& node, const std::string& pointer) {
  if (!node.contains("lattice")) return Lattice::HalfLine;
  const ordered_json& j = node["lattice"];
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "half") return Lattice::HalfLine;
    if (s == "full") return Lattice::FullLine;
  }
  fail(pointer + "/lattice", "expected \"half\" or \"full\"");
}

double parse_number(const ordered_json& node, const char* key, const std::string& pointer) {
  if (!node.contains(key) || !node[key].is_number())
    fail(pointer + "/" + key, std::string("expected numeric field \"") + key + "\"");
  return node[key].get<double>();
}

DiagonalRule parse_rule(const std::string& text, const std::string& pointer);

OperatorSpec parse_node(const ordered_json& node, const std::string& pointer);

std::vector<OperatorSpec> parse_args(const ordered_json& node, const std::string& pointer,
                                     std::size_t min_count, std::size_t max_count) {
  if (!node.contains("args") || !node["args"].is_array())
    fail(pointer + "/args", "expected an \"args\" array");
  const ordered_json& args = node["args"];
  if (args.size() < min_count || args.size() > max_count) {
    if (min_count == max_count)
      fail(pointer + "/args", "expected exactly " + std::to_string(min_count) + " children");
    fail(pointer + "/args", "expected between " + std::to_string(min_count) + " and " +
                                std::to_string(max_count) + " children");
  }
  std::vector<OperatorSpec> out;
  out.reserve(args.size());
  for (std::size_t t = 0; t < args.size(); ++t)
    out.push_back(parse_node(args[t], pointer + "/args/" + std::to_string(t)));
  return out;
}

OperatorSpec parse_node(const ordered_json& node, const std::string& pointer) {
  if (!node.is_object()) fail(pointer, "expected an object node");
  if (!node.contains("op") || !node["op"].is_string())
    fail(pointer + "/op", "expected a string \"op\" field");
  const std::string op = node["op"].get<std::string>();

  try {
    if (op == "shift") return OperatorSpec::shift(parse_lattice(node, pointer));
    if (op == "adjoint") return OperatorSpec::adjoint(parse_args(node, pointer, 1, 1)[0]);
    if (op == "diagonal") {
      if (!node.contains("rule") || !node["rule"].is_string())
        fail(pointer + "/rule", "expected a string diagonal rule");
      return OperatorSpec::diagonal(parse_rule(node["rule"].get<std::string>(), pointer + "/rule"),
                                    parse_lattice(node, pointer));
    }
    if (op == "toeplitz") {
      if (!node.contains("c")) fail(pointer + "/c", "expected coefficient list \"c\"");
      std::vector<Complex> coeffs = parse_complex_list(node["c"], pointer + "/c");
      int c0;
      if (node.contains("c0")) {
        if (!node["c0"].is_number_integer()) fail(pointer + "/c0", "expected an integer index");
        c0 = node["c0"].get<int>();
      } else {
        if (coeffs.size() % 2 == 0)
          fail(pointer + "/c",
               "even-length coefficient lists are ambiguous; add a \"c0\" center index");
        c0 = static_cast<int>(coeffs.size() / 2);
      }
      return OperatorSpec::toeplitz(std::move(coeffs), c0, parse_lattice(node, pointer));
    }
    if (op == "almost_mathieu") {
      return OperatorSpec::almost_mathieu(parse_number(node, "lambda", pointer),
                                          parse_number(node, "omega", pointer),
                                          parse_number(node, "theta", pointer));
    }
    if (op == "cuntz") {
      const double n = parse_number(node, "n", pointer);
      const double k = parse_number(node, "k", pointer);
      return OperatorSpec::cuntz(static_cast<int>(n), static_cast<int>(k));
    }
    if (op == "sum") {
      return OperatorSpec::sum(parse_args(node, pointer, 1, std::size_t(-1)));
    }
    if (op == "product") {
      std::vector<OperatorSpec> args = parse_args(node, pointer, 2, 2);
      return OperatorSpec::product(std::move(args[0]), std::move(args[1]));
    }
    if (op == "scale") {
      if (!node.contains("alpha")) fail(pointer + "/alpha", "expected field \"alpha\"");
      const Complex alpha = parse_complex(node["alpha"], pointer + "/alpha");
      return OperatorSpec::scale(alpha, parse_args(node, pointer, 1, 1)[0]);
    }
    if (op == "direct_sum") {
      std::vector<OperatorSpec> args = parse_args(node, pointer, 2, 2);
      return OperatorSpec::direct_sum(std::move(args[0]), std::move(args[1]));
    }
    if (op == "finite_rank") {
      if (!node.contains("block") || !node["block"].is_array() || node["block"].empty())
        fail(pointer + "/block", "expected a nonempty square \"block\" matrix");
      const ordered_json& rows = node["block"];
      const auto r = static_cast<Eigen::Index>(rows.size());
      Eigen::MatrixXcd block(r, r);
      for (Eigen::Index i = 0; i < r; ++i) {
        const std::string row_ptr = pointer + "/block/" + std::to_string(i);
        if (!rows[static_cast<std::size_t>(i)].is_array() ||
            static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != r)
          fail(row_ptr, "block rows must all have length " + std::to_string(r));
        for (Eigen::Index j = 0; j < r; ++j)
          block(i, j) = parse_complex(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                      row_ptr + "/" + std::to_string(j));
      }
      return OperatorSpec::finite_rank_perturbation(parse_args(node, pointer, 1, 1)[0],
                                                    std::move(block));
    }
  } catch (const DslError&) {
    throw;
  } catch (const Error& e) {
    fail(pointer, e.what());
  }
  fail(pointer + "/op", "unknown op \"" + op + "\"");
}

std::vector<double> split_numbers(const std::string& text, char sep, const std::string& pointer) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    const std::string tok = text.substr(start, end - start);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      fail(pointer, "expected a number, got \"" + tok + "\"");
    out.push_back(v);
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

DiagonalRule parse_rule(const std::string& text, const std::string& pointer) {
  const auto strip_brackets = [](std::string s) {
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') return s.substr(1, s.size() - 2);
    return s;
  };
  if (text.rfind("periodic:", 0) == 0) {
    const std::string list = strip_brackets(text.substr(9));
    // Values are plain reals or "(re,im)" pairs; split on top-level commas.
    std::vector<Complex> values;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t t = 0; t <= list.size(); ++t) {
      if (t < list.size() && list[t] == '(') ++depth;
      if (t < list.size() && list[t] == ')') --depth;
      if (t == list.size() || (list[t] == ',' && depth == 0)) {
        std::string tok = list.substr(start, t - start);
        start = t + 1;
        if (tok.size() >= 2 && tok.front() == '(' && tok.back() == ')') {
          const std::vector<double> parts =
              split_numbers(tok.substr(1, tok.size() - 2), ',', pointer);
          if (parts.size() != 2) fail(pointer, "complex value needs (re,im)");
          values.emplace_back(parts[0], parts[1]);
        } else {
          const std::vector<double> parts = split_numbers(tok, ',', pointer);
          if (parts.size() != 1) fail(pointer, "expected one number per value");
          values.emplace_back(parts[0], 0.0);
        }
      }
    }
    return DiagonalRule::periodic(std::move(values));
  }
  if (text.rfind("dense_in:", 0) == 0) {
    const std::string rest = text.substr(9);
    const std::size_t colon = rest.rfind(':');
    if (colon == std::string::npos) fail(pointer, "dense_in rule needs \"dense_in:lo,hi:seed\"");
    const std::vector<double> range = split_numbers(strip_brackets(rest.substr(0, colon)), ',', pointer);
    if (range.size() != 2) fail(pointer, "dense_in rule needs two interval endpoints");
    const std::string seed_text = rest.substr(colon + 1);
    std::uint64_t seed = 0;
    const auto [p, ec] =
        std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    if (ec != std::errc() || p != seed_text.data() + seed_text.size())
      fail(pointer, "dense_in rule needs an integer seed");
    return DiagonalRule::dense_in(range[0], range[1], seed);
  }
  fail(pointer, "unknown diagonal rule \"" + text + "\" (periodic:... or dense_in:...)");
}

ordered_json complex_json(Complex z) {
  if (z.imag() == 0.0) return ordered_json(z.real() + 0.0);
  return ordered_json::array({z.real() + 0.0, z.imag() + 0.0});
}

ordered_json print_node(const OperatorSpec& spec) {
  const Node::Variant& v = spec.node().data();
  ordered_json j;
  const auto set_lattice = [&] {
    if (spec.lattice() == Lattice::FullLine) j["lattice"] = "full";
  };
  if (std::holds_alternative<ShiftNode>(v)) {
    j["op"] = "shift";
    set_lattice();
  } else if (const auto* a = std::get_if<AdjointNode>(&v)) {
    j["op"] = "adjoint";
    j["args"] = ordered_json::array({print_node(a->child)});
  } else if (const auto* d = std::get_if<DiagonalNode>(&v)) {
    j["op"] = "diagonal";
    j["rule"] = d->rule.name();
    set_lattice();
  } else if (const auto* t = std::get_if<ToeplitzNode>(&v)) {
    j["op"] = "toeplitz";
    ordered_json c = ordered_json::array();
    for (const Complex& z : t->coeffs) c.push_back(complex_json(z));
    j["c"] = std::move(c);
    j["c0"] = t->c0;
    set_lattice();
  } else if (const auto* am = std::get_if<AlmostMathieuNode>(&v)) {
    j["op"] = "almost_mathieu";
    j["lambda"] = am->lambda;
    j["omega"] = am->omega;
    j["theta"] = am->theta;
  } else if (const auto* cz = std::get_if<CuntzNode>(&v)) {
    j["op"] = "cuntz";
    j["n"] = cz->branching;
    j["k"] = cz->branch;
  } else if (const auto* s = std::get_if<SumNode>(&v)) {
    j["op"] = "sum";
    ordered_json args = ordered_json::array();
    for (const OperatorSpec& c : s->children) args.push_back(print_node(c));
    j["args"] = std::move(args);
  } else if (const auto* p = std::get_if<ProductNode>(&v)) {
    j["op"] = "product";
    j["args"] = ordered_json::array({print_node(p->lhs), print_node(p->rhs)});
  } else if (const auto* sc = std::get_if<ScaleNode>(&v)) {
    j["op"] = "scale";
    j["alpha"] = complex_json(sc->alpha);
    j["args"] = ordered_json::array({print_node(sc->child)});
  } else if (const auto* d = std::get_if<DirectSumNode>(&v)) {
    j["op"] = "direct_sum";
    j["args"] = ordered_json::array({print_node(d->lhs), print_node(d->rhs)});
  } else if (const auto* f = std::get_if<FiniteRankNode>(&v)) {
    j["op"] = "finite_rank";
    ordered_json block = ordered_json::array();
    for (Eigen::Index i = 0; i < f->block.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index jj = 0; jj < f->block.cols(); ++jj) row.push_back(complex_json(f->block(i, jj)));
      block.push_back(std::move(row));
    }
    j["block"] = std::move(block);
    j["args"] = ordered_json::array({print_node(f->child)});
  }
  return j;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int t = 15; t >= 0; --t) {
    out[static_cast<std::size_t>(t)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

OperatorSpec parse_operator(const std::string& json_text) {
  if (json_text.size() > kMaxDocumentBytes)
    throw DslError("", "operator document exceeds 1 MiB");
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DslError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_node(doc, "");
}

std::string print_operator(const OperatorSpec& spec) { return print_node(spec).dump(); }

std::string spec_hash(const OperatorSpec& spec) { return hex64(fnv1a64(print_operator(spec))); }

std::string spec_hash(std::span<const OperatorSpec> specs) {
  if (specs.size() == 1) return spec_hash(specs[0]);
  std::string joined;
  for (const OperatorSpec& s : specs) {
    joined += print_operator(s);
    joined += '\n';
  }
  return hex64(fnv1a64(joined));
}

std::vector<ZooEntry> resolve_operator_source(const std::string& source,
                                              std::optional<int> c0_override) {
  if (!source.empty() && source.front() == '{') {
    OperatorSpec spec = parse_operator(source);
    const bool sa = is_formally_selfadjoint(spec);
    MeasureHint hint = MeasureHint::None;
    if (std::holds_alternative<ToeplitzNode>(spec.node().data()) && sa)
      hint = MeasureHint::SymbolPushforward;
    else if (std::holds_alternative<AlmostMathieuNode>(spec.node().data()))
      hint = MeasureHint::Oracle;
    return {ZooEntry{"inline:" + spec_hash(spec), std::move(spec), sa, hint}};
  }
  if (source.rfind("zoo:", 0) != 0)
    throw DslError("", "operator source must be inline JSON ('{...}') or a zoo name ('zoo:...')");

  const std::vector<std::string> parts = split(source.substr(4), ':');
  const std::string& kind = parts.empty() ? std::string() : parts[0];
  const auto lattice_of = [&](std::size_t at) {
    if (parts.size() > at && parts[at] == "full") return Lattice::FullLine;
    return Lattice::HalfLine;
  };

  try {
    if (kind == "shift") return {make_shift(lattice_of(1))};
    if (kind == "toeplitz") {
      if (parts.size() < 2) throw DomainError("zoo:toeplitz needs a coefficient list");
      std::vector<Complex> coeffs;
      for (double v : split_numbers(parts[1], ',', "")) coeffs.emplace_back(v, 0.0);
      const Lattice lat = lattice_of(2);
      if (c0_override) return {make_toeplitz(std::move(coeffs), *c0_override, lat)};
      return {make_toeplitz(std::move(coeffs), lat)};
    }
    if (kind == "am") {
      if (parts.size() < 4) throw DomainError("zoo:am needs lambda:omega:theta");
      const auto num = [&](std::size_t t) {
        const std::vector<double> v = split_numbers(parts[t], ',', "");
        if (v.size() != 1) throw DomainError("zoo:am parameters must be single numbers");
        return v[0];
      };
      return {make_almost_mathieu(num(1), num(2), num(3))};
    }
    if (kind == "cuntz") {
      if (parts.size() < 3) throw DomainError("zoo:cuntz needs n:k");
      return {make_cuntz_isometry(std::stoi(parts[1]), std::stoi(parts[2]))};
    }
    if (kind == "cuntz-family") {
      if (parts.size() < 2) throw DomainError("zoo:cuntz-family needs n");
      return make_cuntz_family(std::stoi(parts[1]));
    }
    if (kind == "diag") {
      if (parts.size() < 2) throw DomainError("zoo:diag needs a rule");
      std::string rule_text = parts[1];
      for (std::size_t t = 2; t < parts.size(); ++t) rule_text += ":" + parts[t];
      return {make_diagonal(parse_rule(rule_text, ""))};
    }
  } catch (const DslError&) {
    throw;
  } catch (const std::exception& e) {
    throw DslError("", std::string("bad zoo name \"") + source + "\": " + e.what());
  }
  throw DslError("", "unknown zoo name \"" + source + "\"");
}

}  // namespace folner
