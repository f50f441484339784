#include "relhom/presentations.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include "relhom/error.hpp"

namespace relhom {

  ////////////////////////////////////////////////////////////////////////
  // Words
  ////////////////////////////////////////////////////////////////////////

  Word reduce(std::vector<Letter> const& raw) {
    Word out;
    auto& stack = out._letters;
    for (auto const& l : raw) {
      if (l.exp == 0) {
        continue;
      }
      if (!stack.empty() && stack.back().gen == l.gen) {
        stack.back().exp += l.exp;
        if (stack.back().exp == 0) {
          stack.pop_back();
        }
      } else {
        stack.push_back(l);
      }
    }
    return out;
  }

  Word Word::generator(std::uint32_t gen, std::int64_t exp) {
    return reduce({{gen, exp}});
  }

  std::size_t Word::length() const {
    std::size_t n = 0;
    for (auto const& l : _letters) {
      n += static_cast<std::size_t>(l.exp < 0 ? -l.exp : l.exp);
    }
    return n;
  }

  Word Word::inverse() const {
    std::vector<Letter> raw(_letters.rbegin(), _letters.rend());
    for (auto& l : raw) {
      l.exp = -l.exp;
    }
    return reduce(raw);
  }

  Word Word::pow(std::int64_t k) const {
    Word base = k < 0 ? inverse() : *this;
    Word out;
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
      out = out * base;
    }
    return out;
  }

  std::vector<std::int64_t> Word::exponent_sums(std::size_t num_generators) const {
    std::vector<std::int64_t> out(num_generators, 0);
    for (auto const& l : _letters) {
      out.at(l.gen) += l.exp;
    }
    return out;
  }

  std::string Word::to_string(std::vector<std::string> const& names) const {
    if (_letters.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < _letters.size(); ++i) {
      auto const& l = _letters[i];
      if (i > 0) {
        out += ' ';
      }
      out += l.gen < names.size() ? names[l.gen] : "g" + std::to_string(l.gen);
      if (l.exp != 1) {
        out += '^' + std::to_string(l.exp);
      }
    }
    return out;
  }

  Word operator*(Word const& u, Word const& v) {
    std::vector<Letter> raw(u._letters);
    raw.insert(raw.end(), v._letters.begin(), v._letters.end());
    return reduce(raw);
  }

  Word commutator(Word const& u, Word const& v) {
    return u.inverse() * v.inverse() * u * v;
  }

  void Presentation::validate() const {
    if (generator_names.size() != num_generators) {
      throw InvariantViolation("presentation: generator name count mismatch");
    }
    for (auto const& r : relators) {
      if (r.empty()) {
        throw InvariantViolation("presentation: empty relator");
      }
      if (!(reduce(r.letters()) == r)) {
        throw InvariantViolation("presentation: relator not freely reduced");
      }
      for (auto const& l : r.letters()) {
        if (l.gen >= num_generators) {
          throw InvariantViolation("presentation: generator out of range");
        }
      }
    }
  }

  std::string Presentation::to_string() const {
    std::string out = "< ";
    for (std::size_t i = 0; i < generator_names.size(); ++i) {
      out += (i == 0 ? "" : ", ") + generator_names[i];
    }
    out += " | ";
    for (std::size_t i = 0; i < relators.size(); ++i) {
      out += (i == 0 ? "" : ", ") + relators[i].to_string(generator_names);
    }
    return out + " >";
  }

  ////////////////////////////////////////////////////////////////////////
  // Parser
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class Parser {
     public:
      explicit Parser(std::string_view text) : _text(text) {}

      Presentation run() {
        Presentation p;
        skip_space();
        expect_keyword("gens");
        parse_names(p);
        skip_space();
        expect_keyword("rels");
        p.num_generators = p.generator_names.size();
        skip_space();
        if (!at_end()) {
          while (true) {
            std::size_t line = _line, col = _col;
            Word        w    = parse_relation();
            if (w.empty()) {
              throw ParseError(line, col, "relator is trivial after reduction");
            }
            p.relators.push_back(std::move(w));
            skip_space();
            if (at_end()) {
              break;
            }
            expect(',');
          }
        }
        return p;
      }

     private:
      bool at_end() const { return _pos >= _text.size(); }
      char peek() const { return at_end() ? '\0' : _text[_pos]; }

      void advance() {
        if (_text[_pos] == '\n') {
          ++_line;
          _col = 1;
        } else {
          ++_col;
        }
        ++_pos;
      }

      void skip_space() {
        while (!at_end()) {
          char c = peek();
          if (c == '#') {
            while (!at_end() && peek() != '\n') {
              advance();
            }
          } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
          } else {
            break;
          }
        }
      }

      [[noreturn]] void fail(std::string const& what) const {
        throw ParseError(_line, _col, what);
      }

      void expect(char c) {
        skip_space();
        if (peek() != c) {
          fail(std::string("expected '") + c + "'"
               + (at_end() ? " but reached end of input"
                           : std::string(" but found '") + peek() + "'"));
        }
        advance();
      }

      static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
      }

      static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_'
               || c == '\'';
      }

      std::string identifier() {
        skip_space();
        if (!ident_start(peek())) {
          fail("expected a name");
        }
        std::string out;
        while (!at_end() && ident_char(peek())) {
          out += peek();
          advance();
        }
        return out;
      }

      void expect_keyword(std::string const& kw) {
        std::size_t line = _line, col = _col;
        std::string got  = at_end() ? "" : identifier();
        if (got != kw) {
          throw ParseError(line, col, "expected '" + kw + ":'");
        }
        expect(':');
      }

      void parse_names(Presentation& p) {
        while (true) {
          skip_space();
          std::size_t line = _line, col = _col;
          std::string name = identifier();
          if (_index.count(name) != 0) {
            throw ParseError(line, col, "duplicate generator '" + name + "'");
          }
          _index[name] = static_cast<std::uint32_t>(p.generator_names.size());
          p.generator_names.push_back(name);
          skip_space();
          if (peek() != ',') {
            break;
          }
          advance();
        }
      }

      std::int64_t integer() {
        skip_space();
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
          negative = peek() == '-';
          advance();
          skip_space();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
          fail("expected an integer exponent");
        }
        std::size_t start = _pos;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
          advance();
        }
        std::int64_t value = 0;
        auto [ptr, ec]     = std::from_chars(
            _text.data() + start, _text.data() + _pos, value);
        if (ec != std::errc()) {
          fail("exponent out of range");
        }
        return negative ? -value : value;
      }

      Word parse_relation() {
        Word lhs = parse_word();
        skip_space();
        if (peek() == '=') {
          advance();
          Word rhs = parse_word();
          return lhs * rhs.inverse();
        }
        return lhs;
      }

      Word parse_word() {
        Word out;
        while (true) {
          skip_space();
          char c = peek();
          if (c == '*') {
            advance();
            continue;
          }
          if (!(ident_start(c) || c == '(' || c == '[' || c == '1')) {
            return out;
          }
          Word f = parse_atom();
          skip_space();
          if (peek() == '^') {
            advance();
            f = f.pow(integer());
          }
          out = out * f;
        }
      }

      Word parse_atom() {
        skip_space();
        char c = peek();
        if (c == '(') {
          advance();
          Word w = parse_word();
          expect(')');
          return w;
        }
        if (c == '[') {
          advance();
          Word w = parse_word();
          expect(',');
          w = commutator(w, parse_word());
          skip_space();
          while (peek() == ',') {
            advance();
            w = commutator(w, parse_word());
            skip_space();
          }
          expect(']');
          return w;
        }
        if (c == '1') {
          advance();
          return {};
        }
        std::size_t line = _line, col = _col;
        std::string name = identifier();
        if (auto it = _index.find(name); it != _index.end()) {
          return Word::generator(it->second);
        }
        // A run of single-letter generators such as "xy".
        std::vector<Letter> raw;
        for (char ch : name) {
          auto it = _index.find(std::string(1, ch));
          if (it == _index.end()) {
            throw ParseError(line, col, "unknown generator '" + name + "'");
          }
          raw.push_back({it->second, 1});
        }
        return reduce(raw);
      }

      std::string_view                     _text;
      std::size_t                          _pos  = 0;
      std::size_t                          _line = 1;
      std::size_t                          _col  = 1;
      std::map<std::string, std::uint32_t> _index;
    };
  }  // namespace

  Presentation parse_presentation(std::string_view text) {
    Presentation p = Parser(text).run();
    p.validate();
    return p;
  }

  ////////////////////////////////////////////////////////////////////////
  // CayleyGroup
  ////////////////////////////////////////////////////////////////////////

  CayleyGroup::CayleyGroup(std::size_t                order,
                           std::vector<element_index> table,
                           std::vector<element_index> generators)
      : _order(order),
        _table(std::move(table)),
        _inverse(order, 0),
        _generators(std::move(generators)) {
    if (_order == 0 || _table.size() != _order * _order) {
      throw InvariantViolation("CayleyGroup: malformed table");
    }
    for (element_index a = 0; a < _order; ++a) {
      bool found = false;
      for (element_index b = 0; b < _order; ++b) {
        if (mul(a, b) == 0) {
          _inverse[a] = b;
          found       = true;
          break;
        }
      }
      if (!found) {
        throw InvariantViolation("CayleyGroup: element without inverse");
      }
    }
  }

  element_index CayleyGroup::element_order(element_index a) const {
    element_index k = 1;
    for (element_index x = a; x != identity(); x = mul(x, a)) {
      ++k;
    }
    return k;
  }

  void CayleyGroup::validate() const {
    std::size_t m = _order;
    for (element_index a = 0; a < m; ++a) {
      if (mul(0, a) != a || mul(a, 0) != a) {
        throw InvariantViolation("CayleyGroup: identity law fails");
      }
    }
    for (element_index a = 0; a < m; ++a) {
      std::vector<char> row(m, 0), col(m, 0);
      for (element_index b = 0; b < m; ++b) {
        if (mul(a, b) >= m || mul(b, a) >= m || row[mul(a, b)]++ || col[mul(b, a)]++) {
          throw InvariantViolation("CayleyGroup: table is not a Latin square");
        }
      }
    }
    auto assoc = [&](element_index a, element_index b, element_index c) {
      if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
        throw InvariantViolation("CayleyGroup: associativity fails");
      }
    };
    if (m <= 64) {
      for (element_index a = 0; a < m; ++a) {
        for (element_index b = 0; b < m; ++b) {
          for (element_index c = 0; c < m; ++c) {
            assoc(a, b, c);
          }
        }
      }
    } else {
      std::mt19937                                 rng(0x5eed);
      std::uniform_int_distribution<element_index> pick(0, m - 1);
      for (std::size_t k = 0; k < 10 * m * m; ++k) {
        assoc(pick(rng), pick(rng), pick(rng));
      }
    }
    std::vector<char>          seen(m, 0);
    std::vector<element_index> queue{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto s : _generators) {
        element_index next = mul(queue[i], s);
        if (!seen[next]) {
          seen[next] = 1;
          queue.push_back(next);
        }
      }
    }
    if (queue.size() != m) {
      throw InvariantViolation("CayleyGroup: generators do not generate");
    }
  }

  element_index evaluate(QuotientMap const& q, CayleyGroup const& g, Word const& w) {
    element_index x = g.identity();
    for (auto const& l : w.letters()) {
      element_index y = q.images.at(l.gen);
      if (l.exp < 0) {
        y = g.inv(y);
      }
      for (std::int64_t k = 0; k < (l.exp < 0 ? -l.exp : l.exp); ++k) {
        x = g.mul(x, y);
      }
    }
    return x;
  }

  void QuotientMap::validate(CayleyGroup const& g, Presentation const& p) const {
    if (images.size() != p.num_generators) {
      throw InvariantViolation("QuotientMap: wrong number of images");
    }
    for (auto x : images) {
      if (x >= g.order()) {
        throw InvariantViolation("QuotientMap: image out of range");
      }
    }
    std::vector<char>          seen(g.order(), 0);
    std::vector<element_index> queue{g.identity()};
    seen[g.identity()] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto s : images) {
        for (auto t : {s, g.inv(s)}) {
          element_index next = g.mul(queue[i], t);
          if (!seen[next]) {
            seen[next] = 1;
            queue.push_back(next);
          }
        }
      }
    }
    if (queue.size() != g.order()) {
      throw InvariantViolation("QuotientMap: images do not generate the group");
    }
    for (auto const& r : p.relators) {
      if (evaluate(*this, g, r) != g.identity()) {
        throw InvariantViolation("QuotientMap: relator "
                                 + r.to_string(p.generator_names)
                                 + " does not evaluate to the identity");
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Coset enumeration
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class CosetTable {
     public:
      CosetTable(std::size_t num_generators, std::size_t limit)
          : _width(2 * num_generators), _limit(limit) {
        new_coset();
      }

      std::size_t size() const { return _forward.size(); }
      bool        live(std::size_t c) const { return _forward[c] == c; }

      std::int64_t& entry(std::size_t c, std::size_t col) {
        return _table[c * _width + col];
      }

      std::int64_t entry(std::size_t c, std::size_t col) const {
        return _table[c * _width + col];
      }

      std::size_t define(std::size_t c, std::size_t col) {
        std::size_t n   = new_coset();
        entry(c, col)   = static_cast<std::int64_t>(n);
        entry(n, col ^ 1) = static_cast<std::int64_t>(c);
        return n;
      }

      void scan_and_fill(std::size_t c, std::vector<std::size_t> const& w) {
        std::size_t    f = c, b = c;
        std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
        while (true) {
          while (i <= j && entry(f, w[i]) >= 0) {
            f = static_cast<std::size_t>(entry(f, w[i]));
            ++i;
          }
          if (i > j) {
            if (f != b) {
              coincidence(f, b);
            }
            return;
          }
          while (j >= i && entry(b, w[j] ^ 1) >= 0) {
            b = static_cast<std::size_t>(entry(b, w[j] ^ 1));
            --j;
          }
          if (j < i) {
            coincidence(f, b);
            return;
          }
          if (i == j) {
            entry(f, w[i])     = static_cast<std::int64_t>(b);
            entry(b, w[i] ^ 1) = static_cast<std::int64_t>(f);
            return;
          }
          define(f, w[i]);
        }
      }

      void coincidence(std::size_t a, std::size_t b) {
        std::vector<std::size_t> queue;
        merge(a, b, queue);
        for (std::size_t k = 0; k < queue.size(); ++k) {
          std::size_t g = queue[k];
          for (std::size_t x = 0; x < _width; ++x) {
            if (entry(g, x) < 0) {
              continue;
            }
            auto d = static_cast<std::size_t>(entry(g, x));
            entry(d, x ^ 1) = -1;
            std::size_t mu = rep(g), nu = rep(d);
            if (entry(mu, x) >= 0) {
              merge(nu, static_cast<std::size_t>(entry(mu, x)), queue);
            } else if (entry(nu, x ^ 1) >= 0) {
              merge(mu, static_cast<std::size_t>(entry(nu, x ^ 1)), queue);
            } else {
              entry(mu, x)     = static_cast<std::int64_t>(nu);
              entry(nu, x ^ 1) = static_cast<std::int64_t>(mu);
            }
          }
        }
      }

     private:
      std::size_t new_coset() {
        if (_forward.size() >= _limit) {
          throw EnumerationLimitError("coset enumeration exceeded "
                                      + std::to_string(_limit) + " cosets");
        }
        _forward.push_back(_forward.size());
        _table.resize(_table.size() + _width, -1);
        return _forward.size() - 1;
      }

      std::size_t rep(std::size_t c) {
        std::size_t r = c;
        while (_forward[r] != r) {
          r = _forward[r];
        }
        while (_forward[c] != r) {
          std::size_t next = _forward[c];
          _forward[c]      = r;
          c                = next;
        }
        return r;
      }

      void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
        std::size_t a = rep(k), b = rep(l);
        if (a == b) {
          return;
        }
        if (a > b) {
          std::swap(a, b);
        }
        _forward[b] = a;
        queue.push_back(b);
      }

      std::size_t               _width;
      std::size_t               _limit;
      std::vector<std::int64_t> _table;
      std::vector<std::size_t>  _forward;
    };

    std::vector<std::size_t> columns_of(Word const& w) {
      std::vector<std::size_t> out;
      for (auto const& l : w.letters()) {
        std::size_t col = 2 * l.gen + (l.exp < 0 ? 1 : 0);
        for (std::int64_t k = 0; k < (l.exp < 0 ? -l.exp : l.exp); ++k) {
          out.push_back(col);
        }
      }
      return out;
    }
  }  // namespace

  Enumeration coset_enumerate(Presentation const& p, std::size_t limit) {
    p.validate();
    if (p.num_generators == 0) {
      throw Error("coset_enumerate: presentation has no generators");
    }
    std::size_t                           width = 2 * p.num_generators;
    CosetTable                            t(p.num_generators, limit);
    std::vector<std::vector<std::size_t>> rels;
    for (auto const& r : p.relators) {
      rels.push_back(columns_of(r));
    }
    for (std::size_t c = 0; c < t.size(); ++c) {
      if (!t.live(c)) {
        continue;
      }
      for (auto const& r : rels) {
        t.scan_and_fill(c, r);
        if (!t.live(c)) {
          break;
        }
      }
      if (!t.live(c)) {
        continue;
      }
      for (std::size_t x = 0; x < width; ++x) {
        if (t.entry(c, x) < 0) {
          t.define(c, x);
        }
      }
    }

    // Standardise by BFS from coset 0.
    std::vector<std::int64_t>  number(t.size(), -1);
    std::vector<std::size_t>   order{0};
    std::vector<std::size_t>   parent{0};
    std::vector<std::size_t>   via{0};
    number[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t x = 0; x < width; ++x) {
        std::int64_t n = t.entry(order[i], x);
        if (n < 0) {
          throw InvariantViolation("coset_enumerate: incomplete table");
        }
        if (number[n] < 0) {
          number[n] = static_cast<std::int64_t>(order.size());
          order.push_back(static_cast<std::size_t>(n));
          parent.push_back(i);
          via.push_back(x);
        }
      }
    }
    std::size_t m = order.size();
    // act[e * width + x] = e * x
    std::vector<element_index> act(m * width);
    for (std::size_t e = 0; e < m; ++e) {
      for (std::size_t x = 0; x < width; ++x) {
        act[e * width + x]
            = static_cast<element_index>(number[t.entry(order[e], x)]);
      }
    }
    std::vector<element_index> table(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      table[a * m] = static_cast<element_index>(a);
      for (std::size_t b = 1; b < m; ++b) {
        element_index ap = table[a * m + parent[b]];
        table[a * m + b] = act[ap * width + via[b]];
      }
    }
    std::vector<element_index> images(p.num_generators);
    for (std::size_t s = 0; s < p.num_generators; ++s) {
      images[s] = act[2 * s];
    }
    auto group = std::make_shared<CayleyGroup const>(m, std::move(table), images);
    group->validate();
    QuotientMap q{std::move(images)};
    q.validate(*group, p);
    return {std::move(group), std::move(q)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Schreier transversal and rewriting
  ////////////////////////////////////////////////////////////////////////

  SchreierData schreier_transversal(std::shared_ptr<CayleyGroup const> g,
                                    QuotientMap const&                 q) {
    SchreierData sd;
    sd.group        = g;
    sd.map          = q;
    std::size_t m   = g->order();
    std::size_t d   = q.images.size();
    sd.transversal.assign(m, Word{});
    sd.basis_index.assign(m * d, 0);
    std::vector<char>          seen(m, 0);
    std::vector<element_index> queue{g->identity()};
    seen[g->identity()] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      element_index h = queue[i];
      for (std::uint32_t s = 0; s < d; ++s) {
        for (int sign : {1, -1}) {
          element_index y    = sign > 0 ? q.images[s] : g->inv(q.images[s]);
          element_index next = g->mul(h, y);
          if (seen[next]) {
            continue;
          }
          seen[next] = 1;
          queue.push_back(next);
          sd.transversal[next] = sd.transversal[h] * Word::generator(s, sign);
          // The tree edge makes exactly one pair (g, s) trivial.
          if (sign > 0) {
            sd.basis_index[h * d + s] = -1;
          } else {
            sd.basis_index[next * d + s] = -1;
          }
        }
      }
    }
    if (queue.size() != m) {
      throw InvariantViolation("schreier_transversal: images do not generate");
    }
    for (element_index h = 0; h < m; ++h) {
      for (std::uint32_t s = 0; s < d; ++s) {
        if (sd.basis_index[h * d + s] < 0) {
          continue;
        }
        element_index hs = g->mul(h, q.images[s]);
        sd.basis_index[h * d + s] = static_cast<std::int64_t>(sd.rank++);
        sd.basis_words.push_back(sd.transversal[h] * Word::generator(s)
                                 * sd.transversal[hs].inverse());
        sd.basis_pairs.emplace_back(h, s);
      }
    }
    return sd;
  }

  IntVec rewrite_in_R(SchreierData const& sd, Word const& w) {
    auto const&               g = *sd.group;
    std::size_t               d = sd.num_generators();
    std::vector<std::int64_t> acc(sd.rank, 0);
    element_index             c = g.identity();
    for (auto const& l : w.letters()) {
      if (l.gen >= d) {
        throw Error("rewrite_in_R: generator out of range");
      }
      element_index y = sd.map.images[l.gen];
      if (l.exp > 0) {
        for (std::int64_t k = 0; k < l.exp; ++k) {
          auto idx = sd.basis_index[c * d + l.gen];
          if (idx >= 0) {
            ++acc[idx];
          }
          c = g.mul(c, y);
        }
      } else {
        element_index yinv = g.inv(y);
        for (std::int64_t k = 0; k < -l.exp; ++k) {
          c        = g.mul(c, yinv);
          auto idx = sd.basis_index[c * d + l.gen];
          if (idx >= 0) {
            --acc[idx];
          }
        }
      }
    }
    if (c != g.identity()) {
      throw Error("rewrite_in_R: word does not lie in R");
    }
    IntVec out(sd.rank);
    for (std::size_t i = 0; i < sd.rank; ++i) {
      out[i] = static_cast<long>(acc[i]);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // PresentedGroup
  ////////////////////////////////////////////////////////////////////////

  PresentedGroup realize(Presentation const& p, std::size_t limit) {
    auto           e = coset_enumerate(p, limit);
    PresentedGroup out;
    out.presentation = p;
    out.group        = e.group;
    out.map          = e.map;
    out.schreier     = schreier_transversal(e.group, e.map);
    return out;
  }

  PresentedGroup attach(Presentation const&                p,
                        std::shared_ptr<CayleyGroup const> group,
                        QuotientMap                        map) {
    p.validate();
    map.validate(*group, p);
    PresentedGroup out;
    out.presentation = p;
    out.group        = std::move(group);
    out.map          = std::move(map);
    out.schreier     = schreier_transversal(out.group, out.map);
    return out;
  }

  std::size_t coset_limit_from_environment() {
    if (char const* env = std::getenv("RELHOM_COSET_LIMIT")) {
      std::size_t value = 0;
      std::string_view s(env);
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
        throw Error("RELHOM_COSET_LIMIT must be a positive integer");
      }
      return value;
    }
    return default_coset_limit;
  }

}  // namespace relhom
