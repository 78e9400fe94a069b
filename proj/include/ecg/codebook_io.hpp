#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecg/edit_model.hpp"
#include "ecg/errors.hpp"
#include "ecg/generator.hpp"

namespace ecg {

struct IoError : Error {
  using Error::Error;
};
struct FileFormatError : Error {
  using Error::Error;
};
struct VersionError : Error {
  using Error::Error;
};
// File parses but its fields contradict each other.
struct InvariantError : Error {
  using Error::Error;
};

inline constexpr int kCodebookFormatVersion = 1;

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j,
                                   const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw FileFormatError("missing field: " + key);
  return *it;
}

template <typename T>
T typed_field(const nlohmann::json& j, const std::string& key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FileFormatError("field has wrong type: " + key);
  }
}

}  // namespace detail

// Stable key order (nlohmann objects sort keys), no timing field unless
// asked: identical inputs serialize to identical bytes.
inline nlohmann::json codebook_to_json(
    const Codebook& cb, std::optional<double> elapsed_s = std::nullopt) {
  nlohmann::json j;
  j["format_version"] = kCodebookFormatVersion;
  j["alphabet"] = std::string(kAlphabet);
  j["check_eoi"] = format_ops(cb.check.ops);
  j["check_eq"] = format_quotas(cb.check.quotas);
  if (cb.correction.has_value()) {
    j["correction_eoi"] = format_ops(cb.correction->ops);
    j["correction_eq"] = format_quotas(cb.correction->quotas);
  } else {
    j["correction_eoi"] = nullptr;
    j["correction_eq"] = nullptr;
  }
  j["constraints"] = {{"run_max", cb.constraint.run_max},
                      {"gc_balance", cb.constraint.gc_balance},
                      {"context_len", cb.constraint.context_len},
                      {"augment_len", cb.constraint.augment_len}};
  j["m"] = cb.size();
  j["n"] = cb.length();
  j["sequences"] = cb.sequences;
  j["redundancy"] = redundancy(cb);
  j["baseline_redundancy"] =
      cb.length() == 0 ? nlohmann::json(nullptr)
                       : nlohmann::json(baseline_redundancy(cb.length()));
  j["seed"] = cb.seed;
  j["steps"] = cb.steps;
  if (elapsed_s.has_value()) j["elapsed_s"] = *elapsed_s;
  return j;
}

inline Codebook codebook_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FileFormatError("codebook root must be an object");
  const int version = detail::typed_field<int>(j, "format_version");
  if (version != kCodebookFormatVersion) {
    throw VersionError("unsupported format_version " + std::to_string(version));
  }
  if (detail::typed_field<std::string>(j, "alphabet") != kAlphabet) {
    throw FileFormatError("unsupported alphabet");
  }

  Codebook cb;
  try {
    cb.check.ops = parse_ops(detail::typed_field<std::string>(j, "check_eoi"));
    cb.check.quotas =
        parse_quotas(detail::typed_field<std::string>(j, "check_eq"));
  } catch (const ProfileError& e) {
    throw FileFormatError(std::string("bad check spec: ") + e.what());
  }
  const auto& ceoi = detail::field(j, "correction_eoi");
  const auto& ceq = detail::field(j, "correction_eq");
  if (ceoi.is_null() != ceq.is_null()) {
    throw InvariantError("correction ops and quotas must both be present");
  }
  if (!ceoi.is_null()) {
    EditSpec corr;
    try {
      corr.ops = parse_ops(ceoi.get<std::string>());
      corr.quotas = parse_quotas(ceq.get<std::string>());
    } catch (const nlohmann::json::exception&) {
      throw FileFormatError("correction fields must be strings or null");
    } catch (const ProfileError& e) {
      throw FileFormatError(std::string("bad correction spec: ") + e.what());
    }
    cb.correction = std::move(corr);
  }

  const auto& cons = detail::field(j, "constraints");
  cb.constraint.run_max = detail::typed_field<int>(cons, "run_max");
  cb.constraint.gc_balance = detail::typed_field<double>(cons, "gc_balance");
  cb.constraint.context_len = detail::typed_field<int>(cons, "context_len");
  cb.constraint.augment_len = detail::typed_field<int>(cons, "augment_len");

  cb.sequences = detail::typed_field<std::vector<std::string>>(j, "sequences");
  cb.seed = detail::typed_field<std::uint64_t>(j, "seed");
  cb.steps = detail::typed_field<std::size_t>(j, "steps");

  const auto m = detail::typed_field<std::size_t>(j, "m");
  const auto n = detail::typed_field<std::size_t>(j, "n");
  if (m != cb.sequences.size()) {
    throw InvariantError("m does not match sequence count");
  }
  for (const auto& s : cb.sequences) {
    if (s.size() != n) throw InvariantError("sequence length does not match n");
    try {
      require_sequence(s);
    } catch (const AlphabetError& e) {
      throw InvariantError(std::string("bad sequence: ") + e.what());
    }
  }
  if (cb.check.ops.size() != cb.check.quotas.size()) {
    throw InvariantError("check ops and quotas disagree in arity");
  }
  if (n != cb.steps * static_cast<std::size_t>(cb.constraint.augment_len)) {
    throw InvariantError("n does not equal steps * augment_len");
  }
  try {
    validate_constraints(cb.constraint);
  } catch (const ProfileError& e) {
    throw InvariantError(std::string("bad constraints: ") + e.what());
  }
  const double r = detail::typed_field<double>(j, "redundancy");
  if (std::abs(r - redundancy(n, m)) > 1e-9) {
    throw InvariantError("stored redundancy does not match m and n");
  }
  return cb;
}

inline void save_codebook(const Codebook& cb, const std::string& path,
                          std::optional<double> elapsed_s = std::nullopt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << codebook_to_json(cb, elapsed_s).dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

inline Codebook load_codebook(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError(std::string("invalid JSON in ") + path + ": " +
                          e.what());
  }
  return codebook_from_json(j);
}

}  // namespace ecg
