#include "ragmi/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace ragmi {

std::string normalize_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

int substring_accuracy(const std::string& response, const std::vector<std::string>& answers, bool exact_match) {
  std::string haystack = exact_match ? response : normalize_text(response);
  for (const std::string& answer : answers) {
    std::string needle = exact_match ? answer : normalize_text(answer);
    if (!needle.empty() && haystack.find(needle) != std::string::npos) return 1;
  }
  return 0;
}

double rho_m(const PmiProfile& profile) {
  if (profile.size() == 0) throw std::domain_error("rho_m: empty profile");
  return std::accumulate(profile.pmi.begin(), profile.pmi.end(), 0.0) / static_cast<double>(profile.size());
}

std::vector<int> tertile_bins(const std::vector<double>& values) {
  if (values.size() < 3) throw std::domain_error("tertile_bins: need at least three values");
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::size_t n = sorted.size();
  // ceil(n/3) and ceil(2n/3) in integers; the quantile value sits at the last
  // rank of each lower third.
  double q1 = sorted[(n + 2) / 3 - 1];
  double q2 = sorted[(2 * n + 2) / 3 - 1];
  std::vector<int> bins;
  bins.reserve(values.size());
  for (double v : values) {
    if (v <= q1) bins.push_back(1);
    else if (v <= q2) bins.push_back(2);
    else bins.push_back(3);
  }
  return bins;
}

std::vector<double> eta_k(const std::vector<PmiProfile>& profiles, const std::vector<int>& gold_positions) {
  if (profiles.empty()) throw std::domain_error("eta_k: need at least one profile");
  if (profiles.size() != gold_positions.size()) {
    throw std::domain_error("eta_k: profiles and gold alignment differ in length");
  }
  int size = static_cast<int>(profiles.front().size());
  for (const PmiProfile& p : profiles) {
    if (static_cast<int>(p.size()) != size) throw std::domain_error("eta_k: profiles disagree on K");
  }
  std::vector<double> eta(static_cast<std::size_t>(size), 0.0);
  for (std::size_t m = 0; m < profiles.size(); ++m) {
    int gold = gold_positions[m];
    if (gold < 1 || gold > size) throw std::domain_error("eta_k: gold position outside 1..K");
    for (int pos = 1; pos <= size; ++pos) {
      // Rotation k places the gold document at position pos when
      // k = ((gold - pos) mod K) + 1.
      int k = ((gold - pos) % size + size) % size + 1;
      eta[static_cast<std::size_t>(pos - 1)] += profiles[m].pmi[static_cast<std::size_t>(k - 1)];
    }
  }
  for (double& v : eta) v /= static_cast<double>(profiles.size());
  return eta;
}

PairedMeans highest_lowest_comparison(const std::vector<SweepRecord>& records) {
  PairedMeans means;
  if (records.empty()) return means;
  for (const SweepRecord& rec : records) {
    if (rec.pmi.empty() || rec.pmi.size() != rec.accuracy.size()) {
      throw std::domain_error("highest_lowest_comparison: malformed sweep record");
    }
    std::size_t hi = 0;
    std::size_t lo = 0;
    for (std::size_t k = 1; k < rec.pmi.size(); ++k) {
      if (rec.pmi[k] > rec.pmi[hi]) hi = k;
      if (rec.pmi[k] < rec.pmi[lo]) lo = k;
    }
    means.highest += rec.accuracy[hi];
    means.lowest += rec.accuracy[lo];
  }
  means.highest /= static_cast<double>(records.size());
  means.lowest /= static_cast<double>(records.size());
  return means;
}

}  // namespace ragmi
