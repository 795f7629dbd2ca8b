#include "edo/qaplib_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include "edo/error.hpp"

namespace edo {

namespace {

struct Token {
  std::string_view text;
  int line = 1;
  std::int64_t index = 0;
};

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  bool next(Token& token) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) return false;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    token = {text_.substr(start, pos_ - start), line_, ++count_};
    return true;
  }

  std::int64_t count() const noexcept { return count_; }
  int line() const noexcept { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::int64_t count_ = 0;
};

std::string where(const Token& token) {
  return "token " + std::to_string(token.index) + " (line " + std::to_string(token.line) + ")";
}

double to_number(const Token& token) {
  double value = 0.0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail(ErrorCode::kParse, where(token) + ": expected a number, got '" + std::string(token.text) + "'");
  }
  return value;
}

int to_int(const Token& token) {
  int value = 0;
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail(ErrorCode::kParse, where(token) + ": expected an integer, got '" + std::string(token.text) + "'");
  }
  return value;
}

Token expect(Tokenizer& tokens, const std::string& what) {
  Token token;
  if (!tokens.next(token)) {
    fail(ErrorCode::kParse, "unexpected end of input after token " + std::to_string(tokens.count()) +
                                ": expected " + what);
  }
  return token;
}

Permutation read_one_based(Tokenizer& tokens, int n) {
  std::vector<int> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Token token = expect(tokens, "permutation entry " + std::to_string(i + 1));
    const int v = to_int(token);
    if (v < 1 || v > n) {
      fail(ErrorCode::kParse, where(token) + ": value " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
    values[static_cast<std::size_t>(i)] = v - 1;
  }
  return Permutation(std::move(values));
}

}  // namespace

QapInstance parse_qaplib_dat(std::string_view text, std::string name) {
  Tokenizer tokens(text);
  const Token head = expect(tokens, "the instance size");
  const int n = to_int(head);
  if (n <= 0) fail(ErrorCode::kParse, where(head) + ": instance size must be positive");
  std::vector<double> first;
  std::vector<double> second;
  const auto cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  first.reserve(cells);
  second.reserve(cells);
  for (std::size_t i = 0; i < 2 * cells; ++i) {
    const Token token = expect(tokens, std::to_string(2 * cells) + " matrix entries, got " + std::to_string(i));
    (i < cells ? first : second).push_back(to_number(token));
  }
  Token extra;
  if (tokens.next(extra)) {
    fail(ErrorCode::kParse, where(extra) + ": trailing data after " + std::to_string(2 * cells) + " matrix entries");
  }
  QapInstance instance = make_qap_instance(SquareMatrix(n, std::move(first)), SquareMatrix(n, std::move(second)));
  instance.name = std::move(name);
  return instance;
}

SolutionFile parse_sln_text(std::string_view text) {
  Tokenizer tokens(text);
  SolutionFile sln;
  const Token head = expect(tokens, "the instance size");
  sln.n = to_int(head);
  if (sln.n <= 0) fail(ErrorCode::kParse, where(head) + ": instance size must be positive");
  sln.objective = to_number(expect(tokens, "the objective value"));
  sln.permutation = read_one_based(tokens, sln.n);
  Token extra;
  if (tokens.next(extra)) fail(ErrorCode::kParse, where(extra) + ": trailing data after the permutation");
  return sln;
}

SolutionFile parse_sln(std::string_view text, QapInstance& instance) {
  SolutionFile sln = parse_sln_text(text);
  if (sln.n != instance.size()) {
    fail(ErrorCode::kParse, "solution has n = " + std::to_string(sln.n) + ", instance has n = " +
                                std::to_string(instance.size()));
  }
  // Reading the stored permutation inverted is the same as swapping the
  // matrices, so two readings cover all four combinations.
  QapInstance swapped = instance;
  std::swap(swapped.weight, swapped.flow);
  const std::pair<QapInstance*, MatrixConvention> readings[] = {
      {&instance, MatrixConvention::kFirstIsWeight},
      {&swapped, MatrixConvention::kSecondIsWeight},
  };
  for (const auto& [view, convention] : readings) {
    if (cost(sln.permutation, *view) == sln.objective) {
      view->convention = convention;
      view->opt_value = sln.objective;
      view->opt_perm = sln.permutation;
      if (view != &instance) instance = std::move(*view);
      return sln;
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "declared objective " << sln.objective << " matches neither matrix order: costs "
      << cost(sln.permutation, instance) << ", " << cost(sln.permutation, swapped);
  fail(ErrorCode::kParse, msg.str());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kIo, "error reading " + path.string());
  return buffer.str();
}

QapInstance load_qaplib(const std::filesystem::path& dat, const std::filesystem::path& sln) {
  QapInstance instance = parse_qaplib_dat(read_text_file(dat), dat.stem().string());
  if (!sln.empty()) parse_sln(read_text_file(sln), instance);
  return instance;
}

QapInstance gen_synthetic_qap(int n, std::uint64_t seed) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "synthetic QAP needs n >= 1");
  Rng rng(seed);
  std::uniform_int_distribution<int> entry(0, 100);
  SquareMatrix w(n);
  SquareMatrix f(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = entry(rng);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) f(i, j) = entry(rng);
  }
  QapInstance instance = make_qap_instance(std::move(w), std::move(f));
  instance.name = "synthetic-qap-" + std::to_string(n);
  return instance;
}

TspInstance gen_synthetic_tsp(int n, bool symmetric, std::uint64_t seed) {
  if (n < 3) fail(ErrorCode::kInvalidArgument, "synthetic TSP needs n >= 3");
  Rng rng(seed);
  std::uniform_int_distribution<int> entry(1, 100);
  SquareMatrix d(n);
  for (int i = 0; i < n; ++i) {
    for (int j = symmetric ? i + 1 : 0; j < n; ++j) {
      if (i == j) continue;
      d(i, j) = entry(rng);
      if (symmetric) d(j, i) = d(i, j);
    }
  }
  TspInstance instance = make_tsp_instance(std::move(d), symmetric);
  instance.name = std::string(symmetric ? "synthetic-stsp-" : "synthetic-atsp-") + std::to_string(n);
  return instance;
}

std::string format_population(const Population& population) {
  validate_population(population);
  std::string out = std::to_string(population.n) + ' ' + std::to_string(population.mu()) + ' ' +
                    std::string(to_string(population.kind)) + '\n';
  for (const auto& member : population.members) out += format_one_based(member) + '\n';
  return out;
}

Population parse_population(std::string_view text) {
  int line_number = 0;
  std::size_t pos = 0;
  Population population;
  bool have_header = false;
  int mu = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string prefix = "line " + std::to_string(line_number) + ": ";
    Tokenizer tokens(line);
    Token token;
    if (!have_header) {
      std::vector<Token> fields;
      while (tokens.next(token)) fields.push_back(token);
      if (fields.size() != 3) fail(ErrorCode::kParse, prefix + "header must be \"n mu kind\"");
      population.n = to_int(fields[0]);
      mu = to_int(fields[1]);
      population.kind = parse_problem_kind(fields[2].text);
      if (population.n < minimum_size(population.kind) || mu < 1) {
        fail(ErrorCode::kParse, prefix + "invalid n or mu in header");
      }
      have_header = true;
      continue;
    }
    std::vector<int> values;
    while (tokens.next(token)) {
      int v = 0;
      try {
        v = to_int(token);
      } catch (const Error& e) {
        fail(ErrorCode::kParse, prefix + e.what());
      }
      if (v < 1 || v > population.n) {
        fail(ErrorCode::kParse, prefix + "value " + std::to_string(v) + " outside 1.." + std::to_string(population.n));
      }
      values.push_back(v - 1);
    }
    if (static_cast<int>(values.size()) != population.n) {
      fail(ErrorCode::kParse, prefix + "expected " + std::to_string(population.n) + " values, got " +
                                  std::to_string(values.size()));
    }
    try {
      population.members.emplace_back(std::move(values));
    } catch (const Error& e) {
      fail(ErrorCode::kParse, prefix + e.what());
    }
  }
  if (!have_header) fail(ErrorCode::kParse, "missing header line");
  if (population.mu() != mu) {
    fail(ErrorCode::kParse, "header declares " + std::to_string(mu) + " members, found " +
                                std::to_string(population.mu()));
  }
  return population;
}

Population read_population(const std::filesystem::path& path) {
  return parse_population(read_text_file(path));
}

void write_population(const Population& population, const std::filesystem::path& path) {
  const std::string text = format_population(population);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorCode::kIo, "error writing " + path.string());
}

}  // namespace edo
