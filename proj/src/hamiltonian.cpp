#include "rflab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "rflab/errors.hpp"

namespace rflab {

Hamiltonian::Hamiltonian(uint32_t n_qubits, std::vector<HamTerm> raw) : n_(n_qubits) {
  // Merge duplicate strings; fold string signs into coefficients.
  std::unordered_map<uint64_t, size_t> index;
  for (auto& t : raw) {
    if (t.op.num_qubits() != n_)
      throw UsageError("hamiltonian term acts on wrong qubit count");
    if (!std::isfinite(t.coeff)) throw UsageError("non-finite coefficient in hamiltonian");
    double c = t.coeff * t.op.sign();
    t.op.set_sign(1);
    if (t.op.is_identity()) {
      offset_ += c;
      continue;
    }
    uint64_t key = t.op.bits_hash();
    auto it = index.find(key);
    if (it != index.end() && terms_[it->second].op.same_bits(t.op)) {
      terms_[it->second].coeff += c;
    } else {
      index.emplace(key, terms_.size());
      terms_.push_back({c, t.op});
    }
  }
  terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                              [](const HamTerm& t) { return t.coeff == 0.0; }),
               terms_.end());
  double sq = 0.0;
  for (const auto& t : terms_) {
    l1_ += std::fabs(t.coeff);
    sq += t.coeff * t.coeff;
    locality_ = std::max(locality_, t.op.weight());
  }
  l2_ = std::sqrt(sq);
}

std::string Hamiltonian::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "# n_qubits " << n_ << "\n";
  if (offset_ != 0.0) out << offset_ << " I\n";
  for (const auto& t : terms_) out << t.coeff << ' ' << t.op.word() << "\n";
  return out.str();
}

Hamiltonian Hamiltonian::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  uint32_t n = 0;
  bool have_n = false;
  std::vector<std::pair<double, std::string>> rows;
  uint32_t max_q = 0;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    std::string body = hash == std::string::npos ? line : line.substr(0, hash);
    // "# n_qubits N" header is optional; without it the qubit count is
    // inferred as max index + 1.
    if (hash != std::string::npos) {
      std::istringstream c(line.substr(hash + 1));
      std::string key;
      if (c >> key && key == "n_qubits") {
        if (c >> n) have_n = true;
      }
    }
    std::istringstream row(body);
    double coeff;
    if (!(row >> coeff)) {
      std::string junk;
      if (std::istringstream(body) >> junk)
        throw UsageError("bad hamiltonian line: '" + line + "'");
      continue;  // blank line
    }
    std::string word, tok;
    while (row >> tok) {
      if (!word.empty()) word += ' ';
      word += tok;
      if (tok != "I") {
        try {
          long q = std::stol(tok.substr(1));
          max_q = std::max(max_q, static_cast<uint32_t>(q));
        } catch (const std::exception&) {
          throw UsageError("bad pauli token '" + tok + "' in line '" + line + "'");
        }
      }
    }
    if (word.empty()) word = "I";
    rows.emplace_back(coeff, word);
  }
  if (rows.empty()) throw UsageError("hamiltonian has no terms");
  if (!have_n) n = max_q + 1;
  std::vector<HamTerm> terms;
  terms.reserve(rows.size());
  for (const auto& [coeff, word] : rows)
    terms.push_back({coeff, PauliString::from_word(n, word)});
  return Hamiltonian(n, std::move(terms));
}

std::string Hamiltonian::to_json() const {
  nlohmann::json j;
  j["n_qubits"] = n_;
  if (offset_ != 0.0) j["offset"] = offset_;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : terms_) {
    nlohmann::json paulis = nlohmann::json::array();
    for (uint32_t q : t.op.support())
      paulis.push_back({std::string(1, t.op.axis(q)), q});
    j["terms"].push_back({{"coeff", t.coeff}, {"paulis", paulis}});
  }
  return j.dump(2);
}

Hamiltonian Hamiltonian::from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad hamiltonian json: ") + e.what());
  }
  try {
    uint32_t n = j.at("n_qubits").get<uint32_t>();
    std::vector<HamTerm> terms;
    for (const auto& jt : j.at("terms")) {
      PauliString op(n);
      for (const auto& jp : jt.at("paulis")) {
        std::string axis = jp.at(0).get<std::string>();
        uint32_t q = jp.at(1).get<uint32_t>();
        if (axis.size() != 1) throw UsageError("bad pauli axis '" + axis + "'");
        if (q >= n) throw UsageError("qubit index out of range in hamiltonian json");
        if (op.axis(q) != 'I') throw UsageError("duplicate qubit in hamiltonian json term");
        op.set(q, axis[0]);
      }
      terms.push_back({jt.at("coeff").get<double>(), op});
    }
    if (j.contains("offset")) terms.push_back({j["offset"].get<double>(), PauliString(n)});
    return Hamiltonian(n, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad hamiltonian json: ") + e.what());
  }
}

}  // namespace rflab
