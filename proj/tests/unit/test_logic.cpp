#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"

using namespace trustrev;
using namespace trustrev::fixtures;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("signature construction") {
  const auto sig = Signature::parse("sick, diam");
  CHECK(sig.size() == 2);
  CHECK(sig.state_count() == 4);
  CHECK(sig.position("diam") == 1);
  CHECK_FALSE(sig.position("ear"));
  CHECK(sig == doctor_sig());

  CHECK(code_of([] { Signature::parse("a a"); }) == ErrorCode::InvalidSignature);
  CHECK(code_of([] { Signature::parse("a 1b"); }) == ErrorCode::InvalidSignature);
  CHECK(code_of([] { Signature::parse("true"); }) == ErrorCode::InvalidSignature);
  CHECK(code_of([] { gen::signature(17); }) == ErrorCode::SignatureTooLarge);
  CHECK(Signature::make({"p0", "p1", "p2"}, 3).size() == 3);
}

TEST_CASE("state literals and canonical indices") {
  const auto& sig = ear_sig();
  CHECK(s1().index() == 3);
  CHECK(s2().index() == 1);
  CHECK(s3().index() == 2);
  CHECK(s4().index() == 0);
  CHECK(parse_state_literal("{ skin , ear }", sig) == s1());
  CHECK(render_state(sig, s1()) == "{ear,skin}");
  CHECK(render_state(sig, s4()) == "{}");
  CHECK(true_atoms(sig, s3()) == std::vector<std::string>{"skin"});
  CHECK(code_of([&] { parse_state_literal("{nose}", sig); }) == ErrorCode::UnknownAtom);
  CHECK(code_of([&] { parse_state_literal("ear", sig); }) == ErrorCode::InvalidStateLiteral);
}

TEST_CASE("state sets") {
  const auto& sig = ear_sig();
  auto a = StateSet::of(sig, {s1(), s3()});
  auto b = StateSet::of(sig, {s3(), s4()});
  CHECK((a & b) == StateSet::of(sig, {s3()}));
  CHECK((a | b).size() == 3);
  CHECK((a - b) == StateSet::of(sig, {s1()}));
  CHECK(a.complement() == StateSet::of(sig, {s2(), s4()}));
  CHECK(a.intersects(b));
  CHECK_FALSE(a.is_subset_of(b));
  CHECK(StateSet::full(sig).is_full());
  CHECK(render_states(a) == "{ear,skin} {skin}");
  CHECK(render_states(StateSet(sig)).empty());

  const auto big = gen::signature(10);
  auto full = StateSet::full(big);
  CHECK(full.size() == 1024);
  CHECK(full.complement().empty());
}

TEST_CASE("formula parsing") {
  const auto& sig = doctor_sig();
  const auto f = dformula("sick & !diam");
  REQUIRE(f.kind() == Formula::Kind::And);
  CHECK(f.lhs().kind() == Formula::Kind::Atom);
  CHECK(f.lhs().atom_name() == "sick");
  CHECK(f.rhs().kind() == Formula::Kind::Not);
  CHECK(f.rhs().lhs().atom_name() == "diam");

  CHECK(render(dformula("sick | diam & !sick")) == "sick | diam & !sick");
  CHECK(render(dformula("(sick | diam) & sick")) == "(sick | diam) & sick");
  CHECK(render(dformula("sick -> diam -> sick")) == "sick -> diam -> sick");
  CHECK(render(dformula("(sick -> diam) -> sick")) == "(sick -> diam) -> sick");
  CHECK(render(dformula("sick & diam & sick")) == "sick & diam & sick");
  CHECK(render(dformula("sick & (diam & sick)")) == "sick & (diam & sick)");
  CHECK(render(dformula("!!true <-> false")) == "!!true <-> false");

  CHECK(code_of([&] { parse_formula("sick &", sig); }) == ErrorCode::SyntaxError);
  CHECK(code_of([&] { parse_formula("(sick", sig); }) == ErrorCode::SyntaxError);
  CHECK(code_of([&] { parse_formula("sick diam", sig); }) == ErrorCode::SyntaxError);
  CHECK(code_of([&] { parse_formula("", sig); }) == ErrorCode::SyntaxError);
  CHECK(code_of([&] { parse_formula("ear", sig); }) == ErrorCode::UnknownAtom);

  try {
    parse_formula("sick & )", sig);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("evaluation and models") {
  const auto& sig = doctor_sig();
  CHECK(holds(dstate("{diam}"), dformula("!sick & diam")));
  CHECK_FALSE(holds(dstate("{sick}"), dformula("!sick & diam")));
  CHECK(dmodels("sick") == StateSet::of(sig, {dstate("{sick}"), dstate("{sick,diam}")}));
  CHECK(dmodels("false").empty());
  CHECK(dmodels("sick -> diam").size() == 3);
  CHECK(dmodels("sick <-> diam").size() == 2);
  CHECK(satisfiable(sig, dformula("sick | diam")));
  CHECK_FALSE(satisfiable(sig, dformula("sick & !sick")));
}

TEST_CASE("prop and dnf of states") {
  const auto& sig = doctor_sig();
  CHECK(render(prop_of_state(sig, dstate("{sick}"))) == "sick & !diam");
  CHECK(render(dnf_of_stateset(dmodels("sick"))) == "sick & diam | sick & !diam");
  CHECK(dnf_of_stateset(StateSet(sig)).kind() == Formula::Kind::Bottom);
}

TEST_CASE("belief states reject inconsistency") {
  CHECK(code_of([] { BeliefState::from_formula(doctor_sig(), dformula("false")); }) ==
        ErrorCode::InconsistentBeliefs);
  CHECK(BeliefState::from_formula(doctor_sig(), dformula("!sick & diam")).models().size() == 1);
}

TEST_CASE("render/parse round trip and model identities") {
  gen::Rng rng(11);
  for (int i = 0; i < 400; ++i) {
    const auto sig = gen::signature(gen::uniform(rng, 1, 4));
    const auto f = gen::formula(rng, sig, 6);
    const auto text = render(f);
    CAPTURE(text);
    CHECK(parse_formula(text, sig) == f);
    const auto m = models(sig, f);
    CHECK(models(sig, dnf_of_stateset(m)) == m);
    for (StateIndex s = 0; s < sig.state_count(); ++s) {
      CHECK(models(sig, prop_of_state(sig, State(s))) == StateSet::of(sig, {State(s)}));
      CHECK(m.contains(State(s)) == holds(State(s), f));
    }
  }
}

TEST_CASE("error messages carry code names and lines") {
  const Error e(ErrorCode::MissingPair, "no distance for ({a}, {})", 7);
  CHECK(std::string(e.what()) == "line 7: MissingPair: no distance for ({a}, {})");
  CHECK(std::string(Error(ErrorCode::EmptyCell, "x").what()) == "EmptyCell: x");
  CHECK(error_code_name(ErrorCode::ThresholdNotTransitive) == "ThresholdNotTransitive");
}
