#include <doctest.h>

#include <set>

#include "rotcalc/errors.hpp"
#include "rotcalc/identities.hpp"

using namespace rotcalc;

TEST_CASE("registry lists at least sixteen distinct identities") {
  std::set<std::string> ids;
  for (const Identity& entry : identity_registry()) {
    CHECK(!entry.anchor.empty());
    CHECK(entry.build);
    ids.insert(entry.id);
  }
  CHECK(ids.size() == identity_registry().size());
  CHECK(ids.size() >= 16);
  CHECK_THROWS_AS(find_identity("no-such-identity"), UnknownIdentity);
}

TEST_CASE("verify reports exact witnesses") {
  const IdentityReport theta = verify("theta-sym", 2);
  CHECK(theta.passed);
  CHECK(theta.witness.is_zero());
  CHECK(theta.identity_id == "theta-sym");
  CHECK(theta.n == 2);

  const IdentityReport main = verify("virasoro-main", 1);
  CHECK(main.passed);
  CHECK(main.witness.is_zero());

  CHECK_THROWS_AS(verify("theta-sym", 1), ContextError);
  CHECK_THROWS_AS(verify("virasoro-main", 4), ContextError);
  Workspace low(1, 4);
  CHECK_THROWS_AS(verify(find_identity("f2-equivalence"), low), ContextError);
}

TEST_CASE("checks carry nonzero witnesses exactly when they fail") {
  const Expression a = Expression::r(1, 2) * Expression::u(1);
  const Check same = equality("same", a, a);
  CHECK(same.passed());
  CHECK(same.witness().is_zero());
  const Check flipped = equality("flipped", a.with_negated_term(0), a);
  CHECK(!flipped.passed());
  CHECK(flipped.witness() == Expression(-2) * a);
  const Check bad = property("bad", false, Expression());
  CHECK(!bad.passed());
  CHECK(!bad.witness().is_zero());
}

TEST_CASE("report order does not depend on the thread count") {
  Workspace ws(2);
  const std::vector<std::string> ids = {"homogeneity", "theta-sym", "f2-equivalence", "phi2-closed", "omega-sym"};
  const auto one = verify_many(ids, ws, 1);
  const auto many = verify_many(ids, ws, 4);
  REQUIRE(one.size() == ids.size());
  REQUIRE(many.size() == ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    CHECK(one[k].identity_id == ids[k]);
    CHECK(many[k].identity_id == ids[k]);
    CHECK(one[k].passed == many[k].passed);
    CHECK(one[k].checks == many[k].checks);
    CHECK(one[k].witness == many[k].witness);
  }
}

TEST_CASE("heavy runs widen only the registered ranges") {
  const Identity& main = find_identity("virasoro-main");
  CHECK(main.supports(3));
  CHECK(!main.supports(4));
  CHECK(main.supports(4, true));
  CHECK(!main.supports(5, true));
  const Identity& bracket = find_identity("virasoro-bracket");
  CHECK(!bracket.supports(3, true));
  CHECK(find_identity("theta-sym").supports(4));
}
