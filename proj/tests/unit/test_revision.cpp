#include <doctest.h>

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

BeliefState patient_beliefs() { return BeliefState::from_formula(doctor_sig(), dformula("!sick & diam")); }

std::vector<PartitionReport> batch(std::initializer_list<std::pair<const char*, const StatePartition*>> items) {
  std::vector<PartitionReport> out;
  for (const auto& [text, partition] : items) out.push_back({dformula(text), *partition});
  return out;
}

}  // namespace

TEST_CASE("two-level and Dalal orders") {
  const auto two = two_level_order(patient_beliefs());
  CHECK(two.rank(dstate("{diam}")) == 0);
  CHECK(two.rank(dstate("{sick}")) == 1);
  CHECK(two.rank(dstate("{}")) == 1);
  CHECK(two.rank(dstate("{sick,diam}")) == 1);

  const auto dalal = patient_order();
  CHECK(dalal.rank(dstate("{diam}")) == 0);
  CHECK(dalal.rank(dstate("{sick,diam}")) == 1);
  CHECK(dalal.rank(dstate("{}")) == 1);
  CHECK(dalal.rank(dstate("{sick}")) == 2);
  CHECK(dalal.minimal(dmodels("sick")) == dmodels("sick & diam"));
  CHECK(dalal.minimal(StateSet(doctor_sig())).empty());
}

TEST_CASE("explicit orders") {
  const auto k = patient_beliefs();
  std::vector<std::pair<State, Rank>> ranks{
      {dstate("{diam}"), 5}, {dstate("{sick}"), 6}, {dstate("{}"), 9}, {dstate("{sick,diam}"), 7}};
  const auto order = explicit_order(k, ranks);
  CHECK(order.rank(dstate("{diam}")) == 0);
  CHECK(order.rank(dstate("{}")) == 4);
  CHECK(agm_revise(order, dformula("sick")) == BeliefState::from_formula(doctor_sig(), dformula("sick & !diam")));

  auto bad = ranks;
  bad[1].second = 5;
  CHECK(code_of([&] { explicit_order(k, bad); }) == ErrorCode::FaithfulnessViolation);
  bad = ranks;
  bad.pop_back();
  CHECK(code_of([&] { explicit_order(k, bad); }) == ErrorCode::IncompleteRanking);
  bad = ranks;
  bad[3].first = dstate("{}");
  CHECK(code_of([&] { explicit_order(k, bad); }) == ErrorCode::DuplicateRank);

  const auto parsed = parse_ranking_file("signature sick diam\n{diam} 0\n{sick} 1 # close\n{} 3\n{sick,diam} 2\n",
                                         doctor_sig());
  CHECK(parsed.size() == 4);
  CHECK(explicit_order(k, parsed).rank(dstate("{}")) == 3);
  CHECK(code_of([] { parse_ranking_file("{diam} x", doctor_sig()); }) == ErrorCode::MalformedLine);
}

TEST_CASE("single-report revision from the doctor") {
  const auto order = patient_order();
  const auto& pd = partition_doctor();
  CHECK(trust_revise(order, pd, dformula("sick")).models() == dmodels("sick & diam"));
  CHECK(trust_revise(order, pd, dformula("!diam")).models() == dmodels("!sick & diam"));
  CHECK(trust_revise(order, pd, dformula("sick & !diam")).models() == dmodels("sick & diam"));
  CHECK(code_of([&] { trust_revise(order, pd, dformula("false")); }) == ErrorCode::UnsatisfiableInput);
}

TEST_CASE("two-level order does not reproduce the doctor example") {
  const auto two = two_level_order(patient_beliefs());
  CHECK(trust_revise(two, partition_doctor(), dformula("sick")).models() == dmodels("sick"));
}

TEST_CASE("plain AGM revision") {
  const auto order = patient_order();
  CHECK(agm_revise(order, dformula("sick")).models() == dmodels("sick & diam"));
  CHECK(agm_revise(order, dformula("diam")).models() == dmodels("!sick & diam"));
  CHECK(code_of([&] { agm_revise(order, dformula("sick & !sick")); }) == ErrorCode::UnsatisfiableInput);
}

TEST_CASE("simultaneous reports") {
  const auto order = patient_order();
  const auto* pd = &partition_doctor();
  const auto* pj = &partition_jeweler();
  CHECK(multi_revise(order, batch({{"sick", pd}, {"!diam", pd}})).models() == dmodels("sick & diam"));
  CHECK(multi_revise(order, batch({{"sick", pj}, {"!diam", pj}})).models() == dmodels("!sick & !diam"));
  CHECK(multi_revise(order, batch({{"sick", pd}, {"!diam", pj}})).models() == dmodels("sick & !diam"));
  CHECK(multi_revise(order, batch({{"sick", pj}, {"!diam", pd}})).models() == dmodels("!sick & diam"));

  const auto unit = unit_partition(doctor_sig());
  CHECK(code_of([&] { multi_revise(order, batch({{"sick", &unit}, {"!sick", &unit}})); }) ==
        ErrorCode::ConflictingReports);
  CHECK(code_of([&] { multi_revise(order, batch({{"false", pd}})); }) == ErrorCode::UnsatisfiableInput);
  CHECK(code_of([&] { multi_revise(order, std::span<const PartitionReport>{}); }) == ErrorCode::EmptyReportSet);
}

TEST_CASE("finer trust does not nest revision results") {
  const auto sig = Signature::parse("p");
  const auto k = BeliefState::from_formula(sig, parse_formula("!p", sig));
  const auto order = dalal_order(k);
  const auto phi = parse_formula("p", sig);
  const auto fine = unit_partition(sig);
  const auto coarse = trivial_partition(sig);
  REQUIRE(is_refinement(fine, coarse));
  const auto finer_result = trust_revise(order, fine, phi).models();
  const auto coarser_result = trust_revise(order, coarse, phi).models();
  CHECK(render_states(finer_result) == "{p}");
  CHECK(render_states(coarser_result) == "{}");
  CHECK_FALSE(finer_result.is_subset_of(coarser_result));
  CHECK(expand(fine, phi).is_subset_of(expand(coarse, phi)));
}
