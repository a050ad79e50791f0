#include <cctype>
#include <sstream>

#include "powpres/errors.hpp"
#include "powpres/presentation.hpp"

namespace powpres {

namespace {

// Recursive-descent word parser over a declared alphabet.
//
// Tokenization of identifier spans is alphabet-aware: the longest declared
// prefix of the span wins, so "ab" parses as a b when only a and b are
// declared, and as the generator ab when that name exists.
class WordParser {
 public:
  WordParser(const std::string& text, const Presentation& p, int line_no, int col_base)
      : s_(text), p_(p), line_(line_no), col_base_(col_base) {}

  Word parse() {
    std::vector<Letter> out;
    sequence(out, /*stoppers=*/"");
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return Word::from_letters(out);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, line_, col_base_ + static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end() const { return pos_ >= s_.size(); }

  // Parses atoms until end of input or one of the stopper characters.
  void sequence(std::vector<Letter>& out, const char* stoppers) {
    for (;;) {
      skip_ws();
      if (at_end()) return;
      char c = s_[pos_];
      for (const char* q = stoppers; *q; ++q)
        if (c == *q) return;
      atom(out);
    }
  }

  void atom(std::vector<Letter>& out) {
    char c = s_[pos_];
    std::vector<Letter> piece;
    if (c >= 'a' && c <= 'z') {
      piece.push_back(name_letter());
    } else if (c >= 'A' && c <= 'Z') {
      auto idx = p_.generator_index(std::string(1, char(std::tolower(c))));
      if (!idx)
        fail("capital '" + std::string(1, c) + "' has no single-letter generator '" +
             std::string(1, char(std::tolower(c))) + "'");
      piece.push_back(make_letter(*idx, -1));
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      std::vector<Letter> u, v;
      sequence(u, ",]");
      if (at_end() || s_[pos_] != ',') fail("expected ',' in commutator");
      ++pos_;
      sequence(v, ",]");
      if (at_end() || s_[pos_] != ']') fail("expected ']' to close commutator");
      ++pos_;
      Word cw = commutator(Word::from_letters(u), Word::from_letters(v));
      piece.assign(cw.letters().begin(), cw.letters().end());
    } else if (c == '(') {
      ++pos_;
      sequence(piece, ")");
      if (at_end() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
    } else {
      fail("unexpected character '" + std::string(1, c) + "'");
    }

    long long e = exponent();
    Word w = Word::from_letters(piece).pow(static_cast<int>(e));
    out.insert(out.end(), w.letters().begin(), w.letters().end());
    // Reduce at the seam so long expressions stay linear in output size.
    Word r = Word::from_letters(out);
    out.assign(r.letters().begin(), r.letters().end());
  }

  // The longest declared-generator prefix of the identifier span at pos_.
  Letter name_letter() {
    size_t end = pos_;
    while (end < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
      ++end;
    for (size_t len = end - pos_; len > 0; --len) {
      auto idx = p_.generator_index(s_.substr(pos_, len));
      if (idx) {
        pos_ += len;
        return make_letter(*idx, 1);
      }
    }
    fail("unknown generator '" + s_.substr(pos_, end - pos_) + "'");
  }

  long long exponent() {
    skip_ws();
    if (at_end() || s_[pos_] != '^') return 1;
    ++pos_;
    skip_ws();
    size_t start = pos_;
    if (!at_end() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected integer exponent after '^'");
    long long e = std::stoll(s_.substr(start, pos_ - start));
    if (e > 1'000'000 || e < -1'000'000) fail("exponent out of range");
    return e;
  }

  const std::string& s_;
  const Presentation& p_;
  size_t pos_ = 0;
  int line_;
  int col_base_;
};

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

std::string trimmed(const std::string& s, size_t from, size_t* col_off) {
  size_t b = s.find_first_not_of(" \t", from);
  if (b == std::string::npos) {
    *col_off = s.size();
    return "";
  }
  size_t e = s.find_last_not_of(" \t\r");
  *col_off = b;
  return s.substr(b, e - b + 1);
}

// Splits on commas at zero bracket/paren depth.
std::vector<std::pair<std::string, size_t>> split_top_level(const std::string& s,
                                                            size_t col_off) {
  std::vector<std::pair<std::string, size_t>> parts;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      parts.emplace_back(s.substr(start, i - start), col_off + start);
      start = i + 1;
    } else if (s[i] == '[' || s[i] == '(') {
      ++depth;
    } else if (s[i] == ']' || s[i] == ')') {
      --depth;
    }
  }
  return parts;
}

}  // namespace

Word parse_word(const std::string& text, const Presentation& p, int line_no, int col_base) {
  return WordParser(text, p, line_no, col_base).parse();
}

Presentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  std::optional<Presentation> skeleton;  // alphabet only, for word parsing
  std::vector<std::string> names;
  std::vector<Word> relators;

  while (std::getline(in, line)) {
    ++line_no;
    std::string body = strip_comment(line);
    if (blank(body)) continue;

    size_t head_pos = body.find_first_not_of(" \t");
    size_t col;
    if (body.compare(head_pos, 5, "gens:") == 0) {
      if (skeleton) throw parse_error("duplicate gens: line", line_no, 1);
      std::istringstream ns(body.substr(head_pos + 5));
      std::string n;
      while (ns >> n) names.push_back(n);
      if (names.empty()) throw parse_error("gens: line declares no generators", line_no, 1);
      skeleton = Presentation::create(names, {}, {});
      continue;
    }

    std::string rest;
    bool is_list = false;
    if (body.compare(head_pos, 5, "rels:") == 0) {
      rest = body.substr(head_pos + 5);
      col = head_pos + 5;
      is_list = true;
    } else if (body.compare(head_pos, 4, "rel:") == 0) {
      rest = body.substr(head_pos + 4);
      col = head_pos + 4;
    } else {
      throw parse_error("expected gens:, rel:, or rels: line", line_no,
                        static_cast<int>(head_pos) + 1);
    }
    if (!skeleton) throw parse_error("relator before gens: line", line_no, 1);

    size_t off;
    std::string w = trimmed(rest, 0, &off);
    if (blank(w))
      throw parse_error("blank relator (write () for the empty word)", line_no,
                        static_cast<int>(col) + 1);
    if (is_list) {
      for (auto& [part, pcol] : split_top_level(w, col + off)) {
        size_t poff;
        std::string pw = trimmed(part, 0, &poff);
        if (blank(pw))
          throw parse_error("blank relator in rels: list", line_no,
                            static_cast<int>(pcol) + 1);
        relators.push_back(parse_word(pw, *skeleton, line_no,
                                      static_cast<int>(pcol + poff) + 1));
      }
    } else {
      relators.push_back(parse_word(w, *skeleton, line_no, static_cast<int>(col + off) + 1));
    }
  }
  if (!skeleton) throw parse_error("missing gens: line", line_no ? line_no : 1, 1);

  Presentation p = Presentation::create(names, relators, {});
  Json root;
  root["generators"] = names;
  Json rels = Json::array();
  for (const auto& r : relators) rels.push_back(serialize_word(r, p));
  root["relators"] = std::move(rels);
  return p.with_provenance({{"parsed", std::move(root)}});
}

std::string serialize_word(const Word& w, const Presentation& p) {
  if (w.empty()) return "()";
  std::string out;
  const auto& ls = w.letters();
  for (size_t i = 0; i < ls.size();) {
    size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long long e = static_cast<long long>(j - i) * letter_sign(ls[i]);
    if (!out.empty()) out += ' ';
    out += p.generator_name(letter_gen(ls[i]));
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

std::string serialize_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& n : p.generator_names()) out += " " + n;
  out += "\n";
  for (const auto& r : p.relators()) out += "rel: " + serialize_word(r, p) + "\n";
  return out;
}

}  // namespace powpres
