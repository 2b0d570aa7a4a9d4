#include <random>

#include <doctest.h>

#include "folner/dsl.hpp"
#include "test_support.hpp"

using namespace folner;

TEST_CASE("parsing the documented nodes") {
  const OperatorSpec s = parse_operator(R"({"op":"shift"})");
  CHECK(s.entry(1, 0) == Complex(1, 0));
  CHECK(s.lattice() == Lattice::HalfLine);

  const OperatorSpec cos2 = parse_operator(
      R"({"op":"sum","args":[{"op":"shift"},{"op":"adjoint","args":[{"op":"shift"}]}]})");
  CHECK(is_formally_selfadjoint(cos2));
  CHECK(cos2.entry(0, 1) == Complex(1, 0));
  CHECK(cos2.entry(1, 0) == Complex(1, 0));

  // Odd lists center themselves: [1,0,1] reads c_{-1}, c_0, c_1.
  const OperatorSpec t = parse_operator(R"({"op":"toeplitz","c":[0.25,0,1]})");
  CHECK(t.entry(0, 1) == Complex(0.25, 0));  // c_{-1}
  CHECK(t.entry(1, 0) == Complex(1, 0));     // c_1

  const OperatorSpec full = parse_operator(R"({"op":"shift","lattice":"full"})");
  CHECK(full.lattice() == Lattice::FullLine);

  const OperatorSpec am =
      parse_operator(R"({"op":"almost_mathieu","lambda":1.0,"omega":0.5,"theta":0.0})");
  CHECK(am.site_entry(0, 0) == Complex(2, 0));

  const OperatorSpec cz = parse_operator(R"({"op":"cuntz","n":3,"k":2})");
  CHECK(cz.entry(11, 3) == Complex(1, 0));

  const OperatorSpec fr = parse_operator(
      R"({"op":"finite_rank","block":[[1,[0,2]],[0,0]],"args":[{"op":"shift"}]})");
  CHECK(fr.entry(0, 1) == Complex(0, 2));
}

TEST_CASE("schema violations carry JSON pointers") {
  CHECK_THROWS_AS((void)parse_operator(R"({"op":"nope"})"), DslError);
  try {
    (void)parse_operator(R"({"op":"sum","args":[{"op":"shift"},{"op":"nope"}]})");
    FAIL("expected DslError");
  } catch (const DslError& e) {
    CHECK(e.pointer() == "/args/1/op");
  }
  try {
    (void)parse_operator(R"({"op":"toeplitz","c":[1,0]})");
    FAIL("expected DslError");
  } catch (const DslError& e) {
    CHECK(e.pointer() == "/c");
  }
  CHECK_NOTHROW((void)parse_operator(R"({"op":"toeplitz","c":[1,0],"c0":0})"));
  CHECK_THROWS_AS((void)parse_operator("not json at all"), DslError);
  CHECK_THROWS_AS((void)parse_operator(R"({"op":"cuntz","n":1,"k":0})"), DslError);

  // Documents above 1 MiB are rejected.
  std::string big = R"({"op":"shift","pad":")" + std::string(1 << 20, 'x') + "\"}";
  CHECK_THROWS_AS((void)parse_operator(big), DslError);
}

TEST_CASE("print/parse round trip preserves entries exactly") {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<Index> idx(0, 200);
  int probes = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const OperatorSpec t = testing::random_spec(rng, 3);
    const std::string text = print_operator(t);
    const OperatorSpec back = parse_operator(text);
    for (int p = 0; p < 25; ++p, ++probes) {
      const Index i = idx(rng), j = idx(rng);
      CHECK(t.entry(i, j) == back.entry(i, j));
    }
    CHECK(spec_hash(t) == spec_hash(back));
  }
  CHECK(probes == 1000);
}

TEST_CASE("zoo names resolve to catalog entries") {
  CHECK(resolve_operator_source("zoo:shift")[0].spec.entry(1, 0) == Complex(1, 0));
  CHECK(resolve_operator_source("zoo:shift:full")[0].spec.lattice() == Lattice::FullLine);

  const std::vector<ZooEntry> t = resolve_operator_source("zoo:toeplitz:1,0,1");
  CHECK(t[0].selfadjoint);
  CHECK(t[0].spec.entry(1, 0) == Complex(1, 0));

  const std::vector<ZooEntry> am = resolve_operator_source("zoo:am:1.0:0.6180339887:0");
  CHECK(am[0].spec.site_entry(0, 0) == Complex(2, 0));

  CHECK(resolve_operator_source("zoo:cuntz:2:0")[0].spec.entry(6, 3) == Complex(1, 0));
  CHECK(resolve_operator_source("zoo:cuntz-family:3").size() == 3);

  const std::vector<ZooEntry> diag = resolve_operator_source("zoo:diag:periodic:0,1");
  CHECK(diag[0].spec.entry(1, 1) == Complex(1, 0));
  CHECK(diag[0].spec.entry(0, 0) == Complex(0, 0));

  const std::vector<ZooEntry> dense = resolve_operator_source("zoo:diag:dense_in:-1,1:9");
  CHECK(dense[0].selfadjoint);

  CHECK_THROWS_AS((void)resolve_operator_source("zoo:unknown"), DslError);
  CHECK_THROWS_AS((void)resolve_operator_source("plainname"), DslError);
  CHECK_THROWS_AS((void)resolve_operator_source("zoo:toeplitz:1,0"), DslError);
  CHECK_NOTHROW((void)resolve_operator_source("zoo:toeplitz:1,0", 0));
}

TEST_CASE("spec hashes separate distinct operators") {
  const std::string a = spec_hash(parse_operator(R"({"op":"shift"})"));
  const std::string b = spec_hash(parse_operator(R"({"op":"shift","lattice":"full"})"));
  const std::string c = spec_hash(parse_operator(R"({"op":"cuntz","n":2,"k":0})"));
  CHECK(a.size() == 16);
  CHECK(a != b);
  CHECK(a != c);
  CHECK(b != c);
}
