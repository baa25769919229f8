#include "genex/method_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "genex/errors.hpp"

namespace genex {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

double parse_real(const std::string& tok, std::size_t line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
    throw ParseError(line, "malformed number '" + tok + "'");
  return value;
}

int parse_positive_int(const std::string& tok, std::size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 1)
    throw ParseError(line, "expected a positive integer, got '" + tok + "'");
  return value;
}

}  // namespace

MethodSpec parse_method(std::istream& in, std::string name) {
  MethodSpec method;
  method.name = std::move(name);
  std::optional<int> order;
  std::size_t last_data_line = 0;

  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto tokens = split_ws(line);

    if (tokens[0] == "order" || tokens[0] == "psorder") {
      if (tokens.size() != 2) throw ParseError(lineno, "expected '" + tokens[0] + " <integer>'");
      const int v = parse_positive_int(tokens[1], lineno);
      if (tokens[0] == "order")
        order = v;
      else
        method.pseudo_symplectic_order = v;
      continue;
    }

    if (tokens.size() < 2) throw ParseError(lineno, "a term needs at least one stage and a weight");
    Term term;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) term.stages.push_back(parse_real(tokens[i], lineno));
    term.weight = parse_real(tokens.back(), lineno);
    const double stage_sum = std::accumulate(term.stages.begin(), term.stages.end(), 0.0);
    if (!(std::abs(stage_sum - 1.0) <= kFileConsistencyTolerance)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "stage fractions sum to " << stage_sum << ", expected 1";
      throw ParseError(lineno, msg.str());
    }
    method.terms.push_back(std::move(term));
    last_data_line = lineno;
  }

  if (method.terms.empty()) throw ParseError(0, "no terms found");
  double weight_sum = 0.0;
  for (const auto& t : method.terms) weight_sum += t.weight;
  if (!(std::abs(weight_sum - 1.0) <= kFileConsistencyTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "weights sum to " << weight_sum << ", expected 1";
    throw ParseError(last_data_line, msg.str());
  }
  method.order = order.value_or(2);
  return method;
}

MethodSpec load_method(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(0, "cannot open coefficient file '" + file.string() + "'");
  return parse_method(in, file.stem().string());
}

void write_method(std::ostream& out, const MethodSpec& method) {
  char buf[32];
  out << "# " << method.name << '\n';
  out << "order " << method.order << '\n';
  if (method.pseudo_symplectic_order) out << "psorder " << *method.pseudo_symplectic_order << '\n';
  for (const auto& term : method.terms) {
    for (double a : term.stages) {
      std::snprintf(buf, sizeof buf, "%.17g", a);
      out << buf << ' ';
    }
    std::snprintf(buf, sizeof buf, "%.17g", term.weight);
    out << buf << '\n';
  }
}

}  // namespace genex
