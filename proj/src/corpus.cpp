#include "msw/corpus.hpp"

#include <array>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

namespace msw {

Sequence::Sequence(std::size_t id, std::string bytes) : id_(id), bytes_(std::move(bytes)) {
  if (bytes_.empty()) throw DataError("sequence " + std::to_string(id) + " is empty");
}

Corpus::Corpus(std::vector<std::string> messages, std::string source) : source_(std::move(source)) {
  sequences_.reserve(messages.size());
  for (auto& m : messages) sequences_.emplace_back(sequences_.size(), std::move(m));
}

std::size_t Corpus::total_length() const noexcept {
  std::size_t total = 0;
  for (const auto& s : sequences_) total += s.length();
  return total;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Splits on '\n', strips a trailing '\r', reports 1-based line numbers.
template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(line, lineno);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

std::string to_hex(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DataError("odd number of hex digits");
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]), lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw DataError("invalid hex digit");
    out.push_back(static_cast<char>(hi * 16 + lo));
  }
  return out;
}

Corpus parse_lines(std::string_view text, LineMode mode, std::string source) {
  std::vector<std::string> messages;
  std::vector<std::size_t> lines;
  for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    if (line.empty()) return;
    lines.push_back(lineno);
    if (mode == LineMode::raw) {
      messages.emplace_back(line);
      return;
    }
    try {
      messages.push_back(from_hex(line));
    } catch (const DataError& e) {
      throw DataError(source + ":" + std::to_string(lineno) + ": " + e.what(), lineno);
    }
  });
  if (messages.empty()) throw DataError(source + ": no sequences found");
  Corpus corpus(std::move(messages), std::move(source));
  corpus.set_source_lines(std::move(lines));
  return corpus;
}

Corpus load_lines(const std::filesystem::path& path, LineMode mode) {
  return parse_lines(read_file(path), mode, path.string());
}

Corpus take_prefix(const Corpus& corpus, std::size_t n) {
  if (n < 1 || n > corpus.size())
    throw std::out_of_range("prefix length " + std::to_string(n) + " outside [1, " +
                            std::to_string(corpus.size()) + "]");
  std::vector<std::string> messages;
  messages.reserve(n);
  for (std::size_t i = 0; i < n; ++i) messages.push_back(corpus[i].bytes());
  Corpus out(std::move(messages), corpus.source() + " [first " + std::to_string(n) + "]");
  std::vector<std::size_t> lines;
  for (std::size_t i = 0; i < n; ++i) lines.push_back(corpus.source_line(i));
  out.set_source_lines(std::move(lines));
  return out;
}

Corpus parse_fasta(std::string_view text, std::optional<std::size_t> truncate, std::string source) {
  std::vector<std::string> records;
  bool in_record = false;
  for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    if (line.empty()) return;
    if (line.front() == '>') {
      if (in_record && records.back().empty())
        throw DataError(source + ":" + std::to_string(lineno) + ": header follows an empty record",
                        lineno);
      records.emplace_back();
      in_record = true;
      return;
    }
    if (!in_record)
      throw DataError(source + ":" + std::to_string(lineno) + ": sequence data before first header",
                      lineno);
    records.back().append(line);
  });
  if (records.empty()) throw DataError(source + ": no FASTA records found");
  if (records.back().empty()) throw DataError(source + ": last record is empty");
  if (truncate) {
    if (*truncate == 0) throw DataError("truncation length must be positive");
    for (auto& r : records)
      if (r.size() > *truncate) r.resize(*truncate);
  }
  return Corpus(std::move(records), std::move(source));
}

Corpus load_fasta(const std::filesystem::path& path, std::optional<std::size_t> truncate) {
  return parse_fasta(read_file(path), truncate, path.string());
}

std::optional<SyntheticTemplate> parse_template(std::string_view name) {
  if (name == "ldap_like") return SyntheticTemplate::ldap_like;
  if (name == "fixed_width") return SyntheticTemplate::fixed_width;
  return std::nullopt;
}

namespace {

constexpr std::array kSurnames{"Smith",   "Miller", "Wilson",  "Mandile", "Schneider", "Garufi",
                               "Hoogland", "Lindall", "Fern",   "Turner",  "Baker",     "Nguyen",
                               "Okafor",  "Rossi",  "Kowalski", "Tanaka", "Dubois",    "Haddad"};
constexpr std::array kGiven{"Meaghan", "Tamar",  "Fabian", "Natalie", "Samuel", "Olivia",
                            "Jun",     "Steve",  "Cameron", "Priya",  "Luca",   "Ingrid",
                            "Mateo",   "Hannah", "Kofi",    "Yuki",   "Amara",  "Jonas"};
constexpr std::array kDepts{"Sales", "Engineering", "Support", "Finance", "Marketing", "Legal",
                            "Operations", "Research"};
constexpr std::array kCities{"Melbourne", "Hawthorn", "Sydney", "Brisbane", "Perth", "Adelaide",
                             "Hobart", "Canberra", "Geelong", "Ballarat"};
constexpr std::array kTitles{"Manager", "Engineer", "Analyst", "Clerk", "Director", "Consultant",
                             "Architect", "Technician"};
constexpr std::array kWords{"alpha",  "bravo",   "charlie", "delta",   "echo",   "foxtrot",
                            "golf",   "hotel",   "india",   "juliett", "kilo",   "lima",
                            "mike",   "november", "oscar",  "papa",    "quebec", "romeo",
                            "sierra", "tango",   "uniform", "victor",  "whiskey", "yankee"};

// Fixed-width fields need names no longer than the field and short enough
// that every record carries at least some padding after them.
constexpr std::array kFwSurnames{"Garufi", "Hoogland", "Lindall", "Fern",  "Smith", "Miller",
                                 "Wilson", "Turner",   "Baker",   "Rossi", "Dubois", "Haddad"};
constexpr std::array kFwGiven{"Meaghan", "Tamar", "Fabian", "Natalie", "Samuel", "Olivia",
                              "Priya",   "Luca",  "Ingrid", "Hannah",  "Jonas",  "Amara"};

// Portable across standard libraries, unlike std::uniform_int_distribution.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  template <typename Array>
  std::string pick(const Array& a) {
    return a[below(a.size())];
  }
  std::string digits(std::size_t count, bool leading_nonzero = false) {
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
      char lo = (i == 0 && leading_nonzero) ? '1' : '0';
      out.push_back(static_cast<char>(lo + below(static_cast<std::size_t>('9' - lo + 1))));
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

std::string pad(std::string s, std::size_t width) {
  s.resize(std::max(width, s.size()), ' ');
  return s;
}

std::string lower(std::string s) {
  for (auto& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

std::string ldap_message(Draw& draw) {
  const std::string sn = draw.pick(kSurnames);
  const std::string gn = draw.pick(kGiven);
  std::ostringstream m;
  m << "{id:" << draw.digits(1 + draw.below(5), true) << ",op:S,sn:" << sn << ",gn:" << gn
    << ",cn:" << gn << ' ' << sn << ",mail:" << lower(gn) << '.' << lower(sn)
    << "@democorp.com,tel:+61 3 " << draw.digits(4) << ' ' << draw.digits(4)
    << ",ou:" << draw.pick(kDepts) << ",l:" << draw.pick(kCities)
    << ",title:" << draw.pick(kTitles) << ",postalCode:" << draw.digits(4)
    << ",manager:cn=" << draw.pick(kGiven) << ' ' << draw.pick(kSurnames)
    << ",ou=" << draw.pick(kDepts) << ",o=DemoCorp,c=AU,desc:";
  const std::size_t words = 2 + draw.below(5);
  for (std::size_t w = 0; w < words; ++w) m << (w ? " " : "") << draw.pick(kWords);
  m << '}';
  return m.str();
}

std::string fixed_width_message(Draw& draw) {
  return pad(draw.pick(kFwSurnames), kFixedFieldWidth) + pad(draw.pick(kFwGiven), kFixedFieldWidth) +
         pad(draw.digits(3, true), kFixedFieldWidth) + draw.digits(5, true);
}

}  // namespace

Corpus generate_synthetic(SyntheticTemplate kind, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("synthetic corpus needs at least 2 messages");
  Draw draw(seed);
  std::vector<std::string> messages;
  messages.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    messages.push_back(kind == SyntheticTemplate::ldap_like ? ldap_message(draw)
                                                            : fixed_width_message(draw));
  const char* name = kind == SyntheticTemplate::ldap_like ? "ldap_like" : "fixed_width";
  return Corpus(std::move(messages), std::string("synthetic:") + name + ":n=" + std::to_string(n) +
                                         ":seed=" + std::to_string(seed));
}

}  // namespace msw
