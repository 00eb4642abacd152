#include "rxgi/engine.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace rxgi {

namespace {

using ast::Kind;
using ast::Node;

std::bitset<256> digit_set()
{
    std::bitset<256> s;
    for (int c = '0'; c <= '9'; ++c)
        s.set(static_cast<std::size_t>(c));
    return s;
}

std::bitset<256> word_set()
{
    std::bitset<256> s = digit_set();
    for (int c = 'a'; c <= 'z'; ++c) {
        s.set(static_cast<std::size_t>(c));
        s.set(static_cast<std::size_t>(c - 'a' + 'A'));
    }
    s.set('_');
    return s;
}

std::bitset<256> space_set()
{
    std::bitset<256> s;
    for (const char c : std::string_view(" \t\n\r\f\v"))
        s.set(static_cast<unsigned char>(c));
    return s;
}

std::optional<std::bitset<256>> class_escape(char c)
{
    switch (c) {
    case 'd': return digit_set();
    case 'D': return ~digit_set();
    case 'w': return word_set();
    case 'W': return ~word_set();
    case 's': return space_set();
    case 'S': return ~space_set();
    default: return std::nullopt;
    }
}

std::optional<char> control_escape(char c)
{
    switch (c) {
    case 'n': return '\n';
    case 'r': return '\r';
    case 't': return '\t';
    case 'f': return '\f';
    case 'v': return '\v';
    default: return std::nullopt;
    }
}

bool is_ascii_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

struct Braces {
    std::uint32_t min = 0;
    std::uint32_t max = kRepeatInfinite;
    std::size_t end = 0; // offset just past '}'
};

} // namespace

class RegexCompiler {
public:
    explicit RegexCompiler(std::string_view pattern) : p_(pattern) { out_.source_ = std::string(pattern); }

    CompiledRegex run()
    {
        out_.root_ = parse_alternation();
        if (i_ < p_.size()) // only a stray ')' stops the top level early
            throw RegexSyntaxError("unbalanced parenthesis", i_);
        return std::move(out_);
    }

private:
    std::uint32_t add(Node node)
    {
        out_.nodes_.push_back(std::move(node));
        return static_cast<std::uint32_t>(out_.nodes_.size() - 1);
    }

    bool at_end() const { return i_ >= p_.size(); }
    char peek() const { return p_[i_]; }

    std::uint32_t parse_alternation()
    {
        std::vector<std::uint32_t> branches{parse_sequence()};
        while (!at_end() && peek() == '|') {
            ++i_;
            branches.push_back(parse_sequence());
        }
        if (branches.size() == 1)
            return branches.front();
        Node alt;
        alt.kind = Kind::alternation;
        alt.children = std::move(branches);
        return add(std::move(alt));
    }

    std::uint32_t parse_sequence()
    {
        std::vector<std::uint32_t> items;
        while (!at_end() && peek() != '|' && peek() != ')')
            items.push_back(parse_piece());
        if (items.size() == 1)
            return items.front();
        Node seq;
        seq.kind = items.empty() ? Kind::empty : Kind::sequence;
        seq.children = std::move(items);
        return add(std::move(seq));
    }

    // Parses "{m}", "{m,}", "{,n}", "{m,n}" or "{,}" at offset `at`. Anything
    // else is not a quantifier (and a lone '{' is then a literal).
    std::optional<Braces> braces_at(std::size_t at) const
    {
        if (at >= p_.size() || p_[at] != '{')
            return std::nullopt;
        std::size_t j = at + 1;
        auto digits = [&] {
            const auto from = j;
            while (j < p_.size() && std::isdigit(static_cast<unsigned char>(p_[j])))
                ++j;
            return p_.substr(from, j - from);
        };
        const auto lo = digits();
        std::string_view hi;
        bool comma = false;
        if (j < p_.size() && p_[j] == ',') {
            comma = true;
            ++j;
            hi = digits();
        }
        if (j >= p_.size() || p_[j] != '}' || (!comma && lo.empty()))
            return std::nullopt;

        auto number = [&](std::string_view digits_text) {
            std::uint64_t v = 0;
            for (const char c : digits_text) {
                v = v * 10 + static_cast<std::uint64_t>(c - '0');
                if (v >= kRepeatInfinite)
                    throw RegexSyntaxError("the repetition number is too large", at);
            }
            return static_cast<std::uint32_t>(v);
        };
        Braces b;
        b.min = lo.empty() ? 0 : number(lo);
        b.max = comma ? (hi.empty() ? kRepeatInfinite : number(hi)) : b.min;
        if (b.max < b.min)
            throw RegexSyntaxError("min repeat greater than max repeat", at);
        b.end = j + 1;
        return b;
    }

    bool quantifier_here() const
    {
        if (at_end())
            return false;
        const char c = peek();
        return c == '*' || c == '+' || c == '?' || braces_at(i_).has_value();
    }

    std::uint32_t parse_piece()
    {
        const auto atom_at = i_;
        auto atom = parse_atom();
        bool quantified = false;
        while (quantifier_here()) {
            if (quantified)
                throw RegexSyntaxError("multiple repeat", i_);
            const Kind k = out_.nodes_[atom].kind;
            if (k == Kind::line_start || k == Kind::line_end)
                throw RegexSyntaxError("nothing to repeat", atom_at);
            Node rep;
            rep.kind = Kind::repeat;
            switch (peek()) {
            case '*': rep.min = 0; rep.max = kRepeatInfinite; ++i_; break;
            case '+': rep.min = 1; rep.max = kRepeatInfinite; ++i_; break;
            case '?': rep.min = 0; rep.max = 1; ++i_; break;
            default: {
                const auto b = *braces_at(i_);
                rep.min = b.min;
                rep.max = b.max;
                i_ = b.end;
            }
            }
            if (!at_end() && peek() == '?') {
                rep.greedy = false;
                ++i_;
            }
            rep.children = {atom};
            atom = add(std::move(rep));
            quantified = true;
        }
        return atom;
    }

    std::uint32_t parse_atom()
    {
        const auto start = i_;
        const char c = p_[i_];
        Node node;
        switch (c) {
        case '(':
            return parse_group();
        case '[':
            return parse_class();
        case '.':
            ++i_;
            node.kind = Kind::any;
            return add(std::move(node));
        case '^':
            ++i_;
            node.kind = Kind::line_start;
            return add(std::move(node));
        case '$':
            ++i_;
            node.kind = Kind::line_end;
            return add(std::move(node));
        case '*':
        case '+':
        case '?':
            throw RegexSyntaxError("nothing to repeat", start);
        case '{':
            if (braces_at(i_))
                throw RegexSyntaxError("nothing to repeat", start);
            break;
        case '\\':
            return parse_escape();
        default:
            break;
        }
        ++i_;
        node.kind = Kind::literal;
        node.literal = c;
        return add(std::move(node));
    }

    std::uint32_t parse_escape()
    {
        const auto start = i_++;
        if (at_end())
            throw RegexSyntaxError("bad escape (end of pattern)", start);
        const char e = p_[i_++];
        Node node;
        if (const auto set = class_escape(e)) {
            node.kind = Kind::char_class;
            node.members = *set;
            return add(std::move(node));
        }
        node.kind = Kind::literal;
        if (const auto ctl = control_escape(e)) {
            node.literal = *ctl;
            return add(std::move(node));
        }
        if (std::isdigit(static_cast<unsigned char>(e)))
            throw RegexSyntaxError("backreferences are not supported", start);
        if (is_ascii_alnum(e))
            throw RegexSyntaxError(std::string("bad escape \\") + e, start);
        node.literal = e;
        return add(std::move(node));
    }

    std::uint32_t parse_group()
    {
        const auto start = i_++;
        Node node;
        node.kind = Kind::group;
        auto rest = p_.substr(i_);
        if (rest.starts_with("?#")) {
            const auto close = p_.find(')', i_);
            if (close == std::string_view::npos)
                throw RegexSyntaxError("missing ), unterminated comment", start);
            node.kind = Kind::comment;
            node.name = std::string(p_.substr(i_ + 2, close - i_ - 2));
            i_ = close + 1;
            return add(std::move(node));
        }
        if (rest.starts_with("?:")) {
            node.group = ast::GroupKind::non_capturing;
            i_ += 2;
        } else if (rest.starts_with("?=") || rest.starts_with("?!")) {
            node.kind = Kind::lookahead;
            node.negative = rest[1] == '!';
            i_ += 2;
        } else if (rest.starts_with("?P<")) {
            i_ += 3;
            const auto name_start = i_;
            while (!at_end() && (is_ascii_alnum(peek()) || peek() == '_'))
                ++i_;
            if (at_end() || peek() != '>' || i_ == name_start ||
                std::isdigit(static_cast<unsigned char>(p_[name_start])))
                throw RegexSyntaxError("bad character in group name", name_start);
            node.group = ast::GroupKind::named;
            node.name = std::string(p_.substr(name_start, i_ - name_start));
            if (!group_names_.insert(node.name).second)
                throw RegexSyntaxError("redefinition of group name '" + node.name + "'", name_start);
            ++i_;
            node.capture_index = ++out_.capture_count_;
        } else if (rest.starts_with("?<=") || rest.starts_with("?<!")) {
            throw RegexSyntaxError("lookbehind is not supported", start);
        } else if (rest.starts_with("?")) {
            throw RegexSyntaxError("unknown extension", start);
        } else {
            node.capture_index = ++out_.capture_count_;
        }
        node.children = {parse_alternation()};
        if (at_end() || peek() != ')')
            throw RegexSyntaxError("missing ), unterminated subpattern", start);
        ++i_;
        return add(std::move(node));
    }

    struct ClassAtom {
        std::optional<char> ch;
        std::bitset<256> set;
    };

    ClassAtom class_atom()
    {
        const char c = p_[i_];
        if (c != '\\') {
            ++i_;
            return {c, {}};
        }
        const auto start = i_++;
        if (at_end())
            throw RegexSyntaxError("unterminated character set", start);
        const char e = p_[i_++];
        if (const auto set = class_escape(e))
            return {std::nullopt, *set};
        if (const auto ctl = control_escape(e))
            return {*ctl, {}};
        if (std::isdigit(static_cast<unsigned char>(e)))
            throw RegexSyntaxError("octal and backreference escapes are not supported", start);
        if (is_ascii_alnum(e))
            throw RegexSyntaxError(std::string("bad escape \\") + e, start);
        return {e, {}};
    }

    std::uint32_t parse_class()
    {
        const auto start = i_++;
        Node node;
        node.kind = Kind::char_class;
        if (!at_end() && peek() == '^') {
            node.negated = true;
            ++i_;
        }
        bool first = true;
        std::bitset<256> members;
        while (true) {
            if (at_end())
                throw RegexSyntaxError("unterminated character set", start);
            if (peek() == ']' && !first)
                break;
            first = false;
            const auto item_at = i_;
            const auto lo = class_atom();
            const bool range = !at_end() && peek() == '-' && i_ + 1 < p_.size() && p_[i_ + 1] != ']';
            if (!range) {
                if (lo.ch)
                    members.set(static_cast<unsigned char>(*lo.ch));
                else
                    members |= lo.set;
                continue;
            }
            ++i_; // '-'
            const auto hi = class_atom();
            if (!lo.ch || !hi.ch)
                throw RegexSyntaxError("bad character range", item_at);
            const auto a = static_cast<unsigned char>(*lo.ch);
            const auto b = static_cast<unsigned char>(*hi.ch);
            if (b < a)
                throw RegexSyntaxError("bad character range", item_at);
            for (unsigned v = a; v <= b; ++v)
                members.set(v);
        }
        ++i_; // ']'
        node.members = node.negated ? ~members : members;
        return add(std::move(node));
    }

    std::string_view p_;
    std::size_t i_ = 0;
    CompiledRegex out_;
    std::set<std::string> group_names_;
};

CompiledRegex compile(std::string_view pattern) { return RegexCompiler(pattern).run(); }

namespace {

std::string printable(unsigned char c)
{
    static constexpr char hex[] = "0123456789abcdef";
    if (c >= 33 && c < 127 && c != '\\' && c != '\'')
        return std::string(1, static_cast<char>(c));
    return std::string("\\x") + hex[c >> 4] + hex[c & 15];
}

void describe_node(const CompiledRegex& re, std::uint32_t idx, std::ostringstream& out)
{
    const auto& n = re.node(idx);
    auto children = [&] {
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i)
                out << ' ';
            describe_node(re, n.children[i], out);
        }
    };
    switch (n.kind) {
    case Kind::empty: out << "empty"; break;
    case Kind::literal: out << '\'' << printable(static_cast<unsigned char>(n.literal)) << '\''; break;
    case Kind::any: out << "any"; break;
    case Kind::line_start: out << "bol"; break;
    case Kind::line_end: out << "eol"; break;
    case Kind::comment: out << "comment"; break;
    case Kind::char_class: {
        out << "class[";
        for (unsigned c = 0; c < 256;) {
            if (!n.members.test(c)) {
                ++c;
                continue;
            }
            unsigned e = c;
            while (e + 1 < 256 && n.members.test(e + 1))
                ++e;
            out << printable(static_cast<unsigned char>(c));
            if (e > c)
                out << '-' << printable(static_cast<unsigned char>(e));
            c = e + 1;
        }
        out << ']';
        break;
    }
    case Kind::sequence: out << "(seq "; children(); out << ')'; break;
    case Kind::alternation: out << "(alt "; children(); out << ')'; break;
    case Kind::repeat:
        out << "(repeat " << n.min << ' ';
        if (n.max == kRepeatInfinite)
            out << "inf";
        else
            out << n.max;
        out << (n.greedy ? " greedy " : " lazy ");
        children();
        out << ')';
        break;
    case Kind::group:
        if (n.group == ast::GroupKind::capturing)
            out << "(group " << n.capture_index << ' ';
        else if (n.group == ast::GroupKind::named)
            out << "(named " << n.name << ' ' << n.capture_index << ' ';
        else
            out << "(nogroup ";
        children();
        out << ')';
        break;
    case Kind::lookahead:
        out << (n.negative ? "(not-ahead " : "(ahead ");
        children();
        out << ')';
        break;
    }
}

} // namespace

std::string CompiledRegex::describe() const
{
    std::ostringstream out;
    describe_node(*this, root_, out);
    return out.str();
}

} // namespace rxgi
