#pragma once

// The worked examples: a patient with doctor/jeweler partitions, and two
// doctors with graded trust over ear/skin.

#include <string>

#include "trustrev/trustrev.hpp"

namespace trustrev::fixtures {

inline const Signature& doctor_sig() {
  static const Signature sig = Signature::make({"sick", "diam"});
  return sig;
}

inline State dstate(const std::string& literal) { return parse_state_literal(literal, doctor_sig()); }

inline Formula dformula(const std::string& text) { return parse_formula(text, doctor_sig()); }

inline StateSet dmodels(const std::string& text) { return models(doctor_sig(), dformula(text)); }

inline const StatePartition& partition_doctor() {
  static const StatePartition p = parse_partition("{sick,diam} {sick} | {diam} {}", doctor_sig());
  return p;
}

inline const StatePartition& partition_jeweler() {
  static const StatePartition p = parse_partition("{sick,diam} {diam} | {sick} {}", doctor_sig());
  return p;
}

inline FaithfulOrder patient_order() {
  return dalal_order(BeliefState::from_formula(doctor_sig(), dformula("!sick & diam")));
}

inline const Signature& ear_sig() {
  static const Signature sig = Signature::make({"ear", "skin"});
  return sig;
}

// s1 = {ear,skin}, s2 = {ear}, s3 = {skin}, s4 = {}.
inline State s1() { return parse_state_literal("{ear,skin}", ear_sig()); }
inline State s2() { return parse_state_literal("{ear}", ear_sig()); }
inline State s3() { return parse_state_literal("{skin}", ear_sig()); }
inline State s4() { return parse_state_literal("{}", ear_sig()); }

inline Formula eformula(const std::string& text) { return parse_formula(text, ear_sig()); }

inline StateSet emodels(const std::string& text) { return models(ear_sig(), eformula(text)); }

inline TrustMetric metric_from_table(Distance d12, Distance d13, Distance d14, Distance d23, Distance d24,
                                     Distance d34) {
  const std::vector<MetricEntry> entries{
      {s1(), s2(), d12}, {s1(), s3(), d13}, {s1(), s4(), d14},
      {s2(), s3(), d23}, {s2(), s4(), d24}, {s3(), s4(), d34},
  };
  return make_metric(ear_sig(), entries);
}

inline const TrustMetric& metric_gp() {
  static const TrustMetric m = metric_from_table(1, 2, 2, 2, 2, 1);
  return m;
}

inline const TrustMetric& metric_specialist() {
  static const TrustMetric m = metric_from_table(2, 2, 2, 2, 2, 2);
  return m;
}

inline FaithfulOrder skin_patient_order() {
  return dalal_order(BeliefState::from_formula(ear_sig(), eformula("skin & !ear")));
}

}  // namespace trustrev::fixtures
