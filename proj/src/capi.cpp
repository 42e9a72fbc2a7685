#include "fusekit.h"

#include <cstring>
#include <sstream>
#include <string>

#include "fusekit/caps.hpp"
#include "fusekit/catalog.hpp"
#include "fusekit/error.hpp"
#include "fusekit/fusion.hpp"
#include "fusekit/io.hpp"
#include "fusekit/queries.hpp"
#include "fusekit/saturation.hpp"
#include "fusekit/search.hpp"

using namespace fusekit;

struct fk_group {
  GroupPtr group;
  std::string name;
};

struct fk_system {
  FusionSystemPtr system;
  std::string group_name;
  std::vector<std::string> member_names;
  std::map<std::string, Sub> named;
};

struct fk_system_list {
  std::vector<fk_system> systems;
  SearchResult result;
};

namespace {

thread_local std::string g_last_error;

fk_status to_status(const Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case ErrorCode::EnumerationCapExceeded:
      return FK_ERR_ENUMERATION_CAP;
    case ErrorCode::AutCapExceeded:
      return FK_ERR_AUT_CAP;
    case ErrorCode::NotNormal:
      return FK_ERR_NOT_NORMAL;
    case ErrorCode::NotConjugate:
      return FK_ERR_NOT_CONJUGATE;
    case ErrorCode::UnknownTag:
      return FK_ERR_UNKNOWN_TAG;
    case ErrorCode::InconsistentPresentation:
      return FK_ERR_INCONSISTENT_PRESENTATION;
    case ErrorCode::ParseError:
      return FK_ERR_PARSE;
    case ErrorCode::SemanticError:
      return FK_ERR_SEMANTIC;
    case ErrorCode::PreconditionViolated:
      return FK_ERR_PRECONDITION;
    case ErrorCode::NotFullyNormalized:
      return FK_ERR_NOT_FULLY_NORMALIZED;
    case ErrorCode::BorelNotConstructed:
      return FK_ERR_BOREL;
    case ErrorCode::BadArgument:
      return FK_ERR_BAD_ARGUMENT;
  }
  return FK_ERR_INTERNAL;
}

template <typename F>
fk_status guard(F&& fn) {
  try {
    fn();
    return FK_OK;
  } catch (const Error& e) {
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FK_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string table_text(const std::vector<SystemRecord>& recs) { return render_table(recs); }

}  // namespace

extern "C" {

const char* fk_last_error(void) { return g_last_error.c_str(); }

void fk_string_free(char* s) { std::free(s); }

void fk_init(int allow_raise) { apply_caps_env(allow_raise != 0); }

fk_status fk_group_from_catalog(const char* name, fk_group** out) {
  return guard([&] {
    auto g = new fk_group{group_from_catalog(name), name};
    *out = g;
  });
}

fk_status fk_group_read(const char* path, fk_group** out) {
  return guard([&] {
    auto g = new fk_group{parse_group_file(path), std::string("file:") + path};
    *out = g;
  });
}

void fk_group_free(fk_group* g) { delete g; }

int64_t fk_group_order(const fk_group* g) { return g->group->order(); }

fk_status fk_group_write(const fk_group* g, char** text) {
  return guard([&] { *text = dup_string(serialize_group(g->group)); });
}

fk_status fk_catalog_names(char** text) {
  return guard([&] {
    std::string s;
    for (const auto& n : catalog_names()) s += n + "\n";
    *text = dup_string(s);
  });
}

fk_status fk_datum_read(const char* path, fk_system** out) {
  return guard([&] {
    ParsedDatum pd = parse_datum_file(path);
    auto s = new fk_system;
    s->system = std::make_shared<FusionSystem>(pd.data);
    s->group_name = pd.group_name;
    s->member_names = pd.member_names;
    s->named = pd.named;
    *out = s;
  });
}

fk_status fk_datum_parse(const char* text, fk_system** out) {
  return guard([&] {
    ParsedDatum pd = parse_datum_text(text);
    auto s = new fk_system;
    s->system = std::make_shared<FusionSystem>(pd.data);
    s->group_name = pd.group_name;
    s->member_names = pd.member_names;
    s->named = pd.named;
    *out = s;
  });
}

fk_status fk_datum_write(const fk_system* s, char** text) {
  return guard([&] {
    *text = dup_string(serialize_datum(s->system->data(), s->group_name, s->member_names));
  });
}

namespace {

void name_members(fk_system& s) {
  const FusionData& d = s.system->data();
  s.member_names.clear();
  s.named.clear();
  for (size_t i = 0; i < d.members.size(); ++i) {
    std::string name = i == 0 ? "S" : "E" + std::to_string(i);
    s.member_names.push_back(name);
    s.named.emplace(name, d.members[i]);
  }
}

}  // namespace

fk_status fk_group_fusion_system(const fk_group* g, int p, fk_system** out) {
  return guard([&] {
    auto s = new fk_system;
    s->system = group_fusion_system(g->group, p);
    // the datum lives on the standalone sylow copy
    s->group_name = "syl:" + std::to_string(p) + "," + g->name;
    name_members(*s);
    *out = s;
  });
}

void fk_system_free(fk_system* s) { delete s; }

fk_status fk_system_is_saturated(const fk_system* s, int* verdict, char** failing) {
  return guard([&] {
    SaturationReport rep = is_saturated(*s->system);
    *verdict = rep.verdict ? 1 : 0;
    if (failing) {
      std::string text;
      if (!rep.verdict) {
        text = failure_name(rep.failing_condition);
        if (rep.failing_class) {
          text += " at class of order " + std::to_string(rep.failing_class->size());
        }
      }
      *failing = dup_string(text);
    }
  });
}

fk_status fk_systems_isomorphic(const fk_system* a, const fk_system* b, int* verdict) {
  return guard([&] { *verdict = systems_isomorphic(*a->system, *b->system) ? 1 : 0; });
}

fk_status fk_system_automizer_order(const fk_system* s, const char* subgroup, int64_t* aut_order,
                                    int64_t* out_order) {
  return guard([&] {
    auto it = s->named.find(subgroup);
    if (it == s->named.end()) fail(ErrorCode::BadArgument, std::string("unknown subgroup name: ") + subgroup);
    AutSet a = s->system->automizer(it->second);
    *aut_order = a.order();
    *out_order = a.order() / inner_automorphisms(a).order();
  });
}

fk_status fk_system_conjugate(const fk_system* s, const char* p, const char* r, int* verdict) {
  return guard([&] {
    auto ip = s->named.find(p);
    auto ir = s->named.find(r);
    if (ip == s->named.end() || ir == s->named.end())
      fail(ErrorCode::BadArgument, "unknown subgroup name");
    *verdict = s->system->are_conjugate(ip->second, ir->second) ? 1 : 0;
  });
}

fk_status fk_system_describe(const fk_system* s, char** text) {
  return guard([&] {
    SystemRecord rec = describe_system(s->system);
    *text = dup_string(table_text({rec}));
  });
}

fk_status fk_all_fusion_systems(const fk_group* g, int p, const fk_search_options* opts,
                                fk_system_list** out) {
  return guard([&] {
    SearchConfig cfg;
    if (opts) {
      cfg.require_trivial_core = opts->allow_core == 0;
      cfg.require_focal_full = opts->allow_partial_focal == 0;
      cfg.jobs = opts->jobs > 0 ? opts->jobs : 1;
      cfg.transcript_log = opts->transcript_log != 0;
      if (opts->log_line) {
        auto fn = opts->log_line;
        auto user = opts->log_user;
        cfg.log = [fn, user](const std::string& line) { fn(line.c_str(), user); };
      }
    }
    auto l = new fk_system_list;
    l->result = all_fusion_systems(g->group, p, cfg);
    for (const auto& rec : l->result.systems) {
      fk_system s;
      s.system = rec.system;
      s.group_name = g->name;
      name_members(s);
      l->systems.push_back(std::move(s));
    }
    *out = l;
  });
}

void fk_system_list_free(fk_system_list* l) { delete l; }

int fk_system_list_size(const fk_system_list* l) { return static_cast<int>(l->systems.size()); }

fk_status fk_system_list_get(const fk_system_list* l, int index, fk_system** out) {
  return guard([&] {
    if (index < 0 || index >= static_cast<int>(l->systems.size()))
      fail(ErrorCode::BadArgument, "index out of range");
    *out = new fk_system(l->systems[index]);
  });
}

fk_status fk_system_list_table(const fk_system_list* l, char** text) {
  return guard([&] { *text = dup_string(table_text(l->result.systems)); });
}

}  // extern "C"
