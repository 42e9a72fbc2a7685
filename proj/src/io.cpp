#include "fusekit/io.hpp"

#include "fusekit/catalog.hpp"

#include <fstream>
#include <sstream>

#include "fusekit/error.hpp"

namespace fusekit {

namespace {

std::string strip(const std::string& line) {
  size_t hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(const std::string& origin, int lineno, const std::string& msg) {
  fail(ErrorCode::ParseError, origin + ":" + std::to_string(lineno) + ": " + msg);
}

}  // namespace

GroupPtr parse_group_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int degree = -1;
  std::vector<Perm> gens;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip(line);
    if (s.empty()) continue;
    if (degree < 0) {
      std::istringstream ls(s);
      std::string kw;
      ls >> kw;
      if (kw != "perm") parse_fail(origin, lineno, "expected 'perm <degree>' header");
      if (!(ls >> degree) || degree < 1) parse_fail(origin, lineno, "bad degree");
      std::string extra;
      if (ls >> extra) parse_fail(origin, lineno, "trailing tokens after degree");
      continue;
    }
    std::istringstream ls(s);
    std::vector<uint16_t> img;
    long v;
    while (ls >> v) {
      if (v < 1 || v > degree) parse_fail(origin, lineno, "image out of range");
      img.push_back(static_cast<uint16_t>(v - 1));
    }
    if (!ls.eof()) parse_fail(origin, lineno, "non-numeric token in image list");
    if (static_cast<int>(img.size()) != degree)
      parse_fail(origin, lineno, "image list length " + std::to_string(img.size()) +
                                     " does not match degree " + std::to_string(degree));
    std::vector<char> hit(degree, 0);
    for (uint16_t x : img) {
      if (hit[x]) parse_fail(origin, lineno, "image list is not a permutation");
      hit[x] = 1;
    }
    gens.emplace_back(std::move(img));
  }
  if (degree < 0) fail(ErrorCode::ParseError, origin + ": missing 'perm <degree>' header");
  return Group::from_generators(degree, gens);
}

GroupPtr parse_group_file(const std::string& path) {
  return parse_group_text(read_file(path), path);
}

std::string serialize_group(const GroupPtr& g) {
  std::string out = "perm " + std::to_string(g->degree()) + "\n";
  for (EltId x : g->generator_ids()) out += g->elem(x).to_string() + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot write file: " + path);
  out << content;
}

// ---- datum format -----------------------------------------------------------

namespace {

EltId eval_word(const GroupPtr& g, const std::string& word, const std::string& origin,
                int lineno) {
  EltId acc = g->identity();
  std::istringstream ws(word);
  std::string tok;
  while (ws >> tok) {
    if (tok == "1") continue;
    if (tok[0] != 'g') parse_fail(origin, lineno, "bad word token: " + tok);
    size_t caret = tok.find('^');
    int idx = std::atoi(tok.substr(1, caret == std::string::npos ? tok.size() - 1 : caret - 1).c_str());
    long long e = 1;
    if (caret != std::string::npos) e = std::atoll(tok.c_str() + caret + 1);
    if (idx < 1 || idx > static_cast<int>(g->generator_ids().size()))
      parse_fail(origin, lineno, "generator index out of range: " + tok);
    acc = g->mul(acc, g->power(g->generator_ids()[idx - 1], e));
  }
  return acc;
}

// shortest-word table over the group generators, for serialization
std::vector<std::string> word_table(const GroupPtr& g) {
  std::vector<std::string> words(g->order());
  std::vector<char> seen(g->order(), 0);
  words[g->identity()] = "1";
  seen[g->identity()] = 1;
  std::vector<EltId> queue = {g->identity()};
  for (size_t i = 0; i < queue.size(); ++i) {
    for (size_t k = 0; k < g->generator_ids().size(); ++k) {
      EltId y = g->mul(queue[i], g->generator_ids()[k]);
      if (!seen[y]) {
        seen[y] = 1;
        words[y] = (queue[i] == g->identity() ? "" : words[queue[i]] + " ") +
                   "g" + std::to_string(k + 1);
        queue.push_back(y);
      }
    }
  }
  return words;
}

}  // namespace

ParsedDatum parse_datum_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  ParsedDatum out;
  int p = 0;
  GroupPtr g;

  struct Block {
    std::string kind;  // "subgroup" or "autos"
    std::string name;
    int lineno;
    std::vector<std::string> lines;
    std::vector<int> line_numbers;
  };
  std::vector<Block> blocks;

  while (std::getline(in, line)) {
    ++lineno;
    std::string s = strip(line);
    if (s.empty()) continue;
    if (!g) {
      std::istringstream ls(s);
      std::string kw, ptok, gtok;
      ls >> kw >> ptok >> gtok;
      if (kw != "fusion" || ptok.rfind("p=", 0) != 0 || gtok.rfind("group=", 0) != 0)
        parse_fail(origin, lineno, "expected 'fusion p=<p> group=<name>' header");
      p = std::atoi(ptok.c_str() + 2);
      if (p < 2) parse_fail(origin, lineno, "bad prime");
      out.group_name = gtok.substr(6);
      g = group_from_catalog(out.group_name);
      continue;
    }
    std::istringstream ls(s);
    std::string kw;
    ls >> kw;
    if (kw == "subgroup" || kw == "autos") {
      std::string name;
      if (!(ls >> name)) parse_fail(origin, lineno, kw + " needs a name");
      blocks.push_back({kw, name, lineno, {}, {}});
      continue;
    }
    if (blocks.empty()) parse_fail(origin, lineno, "content before any block");
    blocks.back().lines.push_back(s);
    blocks.back().line_numbers.push_back(lineno);
  }
  if (!g) fail(ErrorCode::ParseError, origin + ": missing fusion header");

  out.data.s = g;
  out.data.p = p;

  // first pass: subgroups
  for (const Block& b : blocks) {
    if (b.kind != "subgroup") continue;
    if (out.named.count(b.name)) parse_fail(origin, b.lineno, "duplicate subgroup name " + b.name);
    std::vector<EltId> gens;
    for (size_t i = 0; i < b.lines.size(); ++i) {
      const std::string& s = b.lines[i];
      int ln = b.line_numbers[i];
      if (s.rfind("word ", 0) == 0 || s == "word") {
        gens.push_back(eval_word(g, s.substr(4), origin, ln));
      } else {
        // permutation image list
        std::istringstream es(s);
        std::vector<uint16_t> img;
        long v;
        while (es >> v) {
          if (v < 1 || v > g->degree()) parse_fail(origin, ln, "image out of range");
          img.push_back(static_cast<uint16_t>(v - 1));
        }
        if (!es.eof()) parse_fail(origin, ln, "bad image list");
        if (static_cast<int>(img.size()) != g->degree())
          parse_fail(origin, ln, "image list length mismatch");
        auto id = g->try_id_of(Perm(std::move(img)));
        if (!id) parse_fail(origin, ln, "permutation is not a group element");
        gens.push_back(*id);
      }
    }
    out.named.emplace(b.name, sub_from_gens(g, gens));
  }

  // second pass: automizers, defining the member sequence
  for (const Block& b : blocks) {
    if (b.kind != "autos") continue;
    auto it = out.named.find(b.name);
    if (it == out.named.end()) parse_fail(origin, b.lineno, "autos for unknown subgroup " + b.name);
    const Sub& q = it->second;
    std::vector<Perm> gens;
    for (size_t i = 0; i < b.lines.size(); ++i) {
      const std::string& s = b.lines[i];
      int ln = b.line_numbers[i];
      // parse:  gen <i> -> <word tokens...> gen <j> -> ...
      std::istringstream as(s);
      std::string tok;
      std::map<int, EltId> images;
      int current = -1;
      std::string word;
      auto flush = [&]() {
        if (current >= 0) {
          images[current] = eval_word(g, word, origin, ln);
          word.clear();
        }
      };
      while (as >> tok) {
        if (tok == "gen") {
          flush();
          if (!(as >> current)) parse_fail(origin, ln, "gen needs an index");
          std::string arrow;
          if (!(as >> arrow) || arrow != "->") parse_fail(origin, ln, "expected ->");
        } else {
          if (current < 0) parse_fail(origin, ln, "word outside gen clause");
          word += tok + " ";
        }
      }
      flush();
      // extend the generator images to a full automorphism of q
      if (images.empty()) parse_fail(origin, ln, "empty automorphism line");
      std::vector<EltId> image_of(q.elems.size(), -1);
      std::vector<char> used(g->order(), 0);
      image_of[q.position_of(g->identity())] = g->identity();
      used[g->identity()] = 1;
      std::vector<std::pair<EltId, EltId>> assigned;  // (source, image)
      for (auto [gi, img] : images) {
        if (gi < 1 || gi > static_cast<int>(q.gens.size()))
          parse_fail(origin, ln, "gen index out of range");
        assigned.push_back({q.gens[gi - 1], img});
      }
      if (assigned.size() != q.gens.size())
        parse_fail(origin, ln, "automorphism must cover every subgroup generator");
      // propagate products
      std::vector<EltId> stack = {g->identity()};
      while (!stack.empty()) {
        EltId x = stack.back();
        stack.pop_back();
        EltId fx = image_of[q.position_of(x)];
        for (auto [src, img] : assigned) {
          EltId nx = g->mul(x, src);
          EltId nfx = g->mul(fx, img);
          int pos = q.position_of(nx);
          if (pos < 0) parse_fail(origin, ln, "generator word leaves the subgroup");
          if (image_of[pos] < 0) {
            if (q.position_of(nfx) < 0)
              parse_fail(origin, ln, "automorphism image leaves the subgroup");
            image_of[pos] = nfx;
            stack.push_back(nx);
          } else if (image_of[pos] != nfx) {
            parse_fail(origin, ln, "inconsistent automorphism");
          }
        }
      }
      std::vector<uint16_t> perm(q.elems.size());
      std::vector<char> hit(q.elems.size(), 0);
      for (size_t t = 0; t < q.elems.size(); ++t) {
        if (image_of[t] < 0) parse_fail(origin, ln, "automorphism not total");
        int pos = q.position_of(image_of[t]);
        if (pos < 0 || hit[pos]) parse_fail(origin, ln, "automorphism is not a bijection");
        hit[pos] = 1;
        perm[t] = static_cast<uint16_t>(pos);
      }
      gens.emplace_back(std::move(perm));
    }
    AutSet a;
    a.base = q;
    a.carrier = Group::from_generators(static_cast<int>(q.elems.size()), gens);
    out.data.members.push_back(q);
    out.data.autos.push_back(a);
    out.member_names.push_back(b.name);
  }

  if (out.data.members.empty()) fail(ErrorCode::SemanticError, origin + ": datum has no members");
  if (out.data.members[0].order() != g->order())
    fail(ErrorCode::SemanticError, origin + ": the first member block must be the whole group");
  validate_fusion_data(out.data);
  return out;
}

ParsedDatum parse_datum_file(const std::string& path) {
  return parse_datum_text(read_file(path), path);
}

std::string serialize_datum(const FusionData& d, const std::string& group_name,
                            const std::vector<std::string>& member_names) {
  auto words = word_table(d.s);
  std::string out = "fusion p=" + std::to_string(d.p) + " group=" + group_name + "\n";
  for (size_t i = 0; i < d.members.size(); ++i) {
    std::string name = i < member_names.size() ? member_names[i]
                                               : (i == 0 ? std::string("S")
                                                         : "E" + std::to_string(i));
    out += "subgroup " + name + "\n";
    for (EltId x : d.members[i].gens) out += "word " + words[x] + "\n";
    out += "autos " + name + "\n";
    for (EltId c : d.autos[i].carrier->generator_ids()) {
      std::string line;
      for (size_t gi = 0; gi < d.members[i].gens.size(); ++gi) {
        EltId src = d.members[i].gens[gi];
        EltId img = d.autos[i].base.elems[d.autos[i].carrier->elem(c)[d.members[i].position_of(src)]];
        if (gi) line += " ";
        line += "gen " + std::to_string(gi + 1) + " -> " + words[img];
      }
      out += line + "\n";
    }
  }
  return out;
}

}  // namespace fusekit
