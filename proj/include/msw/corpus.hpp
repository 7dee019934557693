#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msw {

/// Raised for malformed or unreadable input data. Carries the 1-based line
/// number when the problem is tied to a specific line (0 otherwise).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A non-empty byte string. The id is the sequence's position in its corpus
/// and doubles as its colour in the generalized suffix tree.
class Sequence {
 public:
  Sequence(std::size_t id, std::string bytes);

  std::size_t id() const noexcept { return id_; }
  const std::string& bytes() const noexcept { return bytes_; }
  std::size_t length() const noexcept { return bytes_.size(); }
  unsigned char operator[](std::size_t i) const noexcept {
    return static_cast<unsigned char>(bytes_[i]);
  }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::size_t id_;
  std::string bytes_;
};

class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<std::string> messages, std::string source);

  std::size_t size() const noexcept { return sequences_.size(); }
  bool empty() const noexcept { return sequences_.empty(); }
  const Sequence& operator[](std::size_t i) const noexcept { return sequences_[i]; }
  const std::vector<Sequence>& sequences() const noexcept { return sequences_; }
  const std::string& source() const noexcept { return source_; }

  std::size_t total_length() const noexcept;

  /// 1-based line of the input file sequence i came from; i + 1 when the
  /// corpus was not read line by line.
  std::size_t source_line(std::size_t i) const noexcept {
    return i < lines_.size() ? lines_[i] : i + 1;
  }
  void set_source_lines(std::vector<std::size_t> lines) { lines_ = std::move(lines); }

  auto begin() const noexcept { return sequences_.begin(); }
  auto end() const noexcept { return sequences_.end(); }

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.sequences_ == b.sequences_;
  }

 private:
  std::vector<Sequence> sequences_;
  std::string source_;
  std::vector<std::size_t> lines_;
};

enum class LineMode { raw, hex };

/// One sequence per non-empty line. Raw mode keeps the bytes verbatim (minus
/// the "\n" or "\r\n" terminator); hex mode decodes pairs of hex digits.
Corpus load_lines(const std::filesystem::path& path, LineMode mode);

/// Same as load_lines but reads from an in-memory buffer.
Corpus parse_lines(std::string_view text, LineMode mode, std::string source = "<memory>");

Corpus take_prefix(const Corpus& corpus, std::size_t n);

/// FASTA records, '>' headers. `truncate` limits each record to its first k
/// symbols.
Corpus load_fasta(const std::filesystem::path& path,
                  std::optional<std::size_t> truncate = std::nullopt);
Corpus parse_fasta(std::string_view text, std::optional<std::size_t> truncate = std::nullopt,
                   std::string source = "<memory>");

enum class SyntheticTemplate { ldap_like, fixed_width };

/// Deterministic stand-in corpora. ldap_like produces
/// "{id:<digits>,op:S,sn:<name>,...}" messages of roughly 250 bytes;
/// fixed_width produces space-padded IMS-style phone book records.
Corpus generate_synthetic(SyntheticTemplate kind, std::size_t n, std::uint64_t seed);

/// Width every fixed_width field is padded to.
inline constexpr std::size_t kFixedFieldWidth = 10;

std::string to_hex(std::string_view bytes);
std::string from_hex(std::string_view hex);

std::optional<SyntheticTemplate> parse_template(std::string_view name);

}  // namespace msw
