#pragma once

#include <optional>
#include <string>
#include <utility>

#include "json.hpp"

#include "hist/witness.hpp"

namespace hist {

enum class Answer { yes, no, undecided };

inline const char* answer_name(Answer a) {
  switch (a) {
    case Answer::yes: return "YES";
    case Answer::no: return "NO";
    case Answer::undecided: return "UNDECIDED";
  }
  return "?";
}

// Tagged record naming the theorem/condition that proves a NO (or, for
// UNDECIDED, why no method applied). Params are free-form JSON so that
// independent checkers can re-validate a certificate against the graph.
struct Certificate {
  std::string kind;
  nlohmann::json params;
};

struct Verdict {
  Answer answer = Answer::undecided;
  std::string method;
  std::optional<TreeWitness> witness;
  std::optional<Certificate> certificate;
  std::string reason;  // set for UNDECIDED

  static Verdict yes(std::string method, TreeWitness w) {
    Verdict v;
    v.answer = Answer::yes;
    v.method = std::move(method);
    v.witness = std::move(w);
    return v;
  }
  static Verdict no(std::string method, Certificate c) {
    Verdict v;
    v.answer = Answer::no;
    v.method = std::move(method);
    v.certificate = std::move(c);
    return v;
  }
  static Verdict undecided(std::string method, std::string reason) {
    Verdict v;
    v.answer = Answer::undecided;
    v.method = std::move(method);
    v.reason = std::move(reason);
    return v;
  }
};

}  // namespace hist
