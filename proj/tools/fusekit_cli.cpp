// fusekit command line: thin shell over the C API.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fusekit.h"

namespace {

int fail_with(fk_status st) {
  std::fprintf(stderr, "error: %s\n", fk_last_error());
  (void)st;
  return 2;
}

void print_log_line(const char* line, void*) { std::printf("%s\n", line); }

struct GroupHandle {
  fk_group* g = nullptr;
  ~GroupHandle() {
    if (g) fk_group_free(g);
  }
};

struct SystemHandle {
  fk_system* s = nullptr;
  ~SystemHandle() {
    if (s) fk_system_free(s);
  }
};

int open_group(const std::string& name, GroupHandle& h) {
  fk_status st = fk_group_from_catalog(name.c_str(), &h.g);
  if (st != FK_OK) return fail_with(st);
  return 0;
}

int open_datum(const std::string& path, SystemHandle& h) {
  fk_status st = fk_datum_read(path.c_str(), &h.s);
  if (st != FK_OK) return fail_with(st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fusion system toolkit"};
  app.require_subcommand(1);

  bool raise_caps = false;
  app.add_flag("--unsafe-raise-caps", raise_caps,
               "allow FUSEKIT_CAPS to raise the enumeration caps");

  // all-systems
  auto* all = app.add_subcommand("all-systems", "search for saturated fusion systems");
  std::string all_group;
  int all_p = 2;
  bool allow_core = false, allow_partial_focal = false;
  int jobs = 1;
  std::string log_mode;
  all->add_option("group", all_group, "catalog name or file:<path>")->required();
  all->add_option("-p,--prime", all_p, "the prime")->required();
  all->add_flag("--allow-core", allow_core, "keep systems with a nontrivial core");
  all->add_flag("--allow-partial-focal", allow_partial_focal,
                "keep systems whose focal subgroup is proper");
  all->add_option("--jobs", jobs, "worker threads for the saturation phase");
  all->add_option("--log", log_mode, "progress format: appendixc");

  // saturated
  auto* sat = app.add_subcommand("saturated", "check saturation of a datum file");
  std::string sat_path;
  sat->add_option("datum", sat_path)->required();

  // group-fusion
  auto* gf = app.add_subcommand("group-fusion", "fusion system of a finite group");
  std::string gf_group;
  int gf_p = 2;
  gf->add_option("group", gf_group)->required();
  gf->add_option("-p,--prime", gf_p)->required();

  // iso
  auto* iso = app.add_subcommand("iso", "test two datum files for isomorphism");
  std::string iso_a, iso_b;
  iso->add_option("datum1", iso_a)->required();
  iso->add_option("datum2", iso_b)->required();

  // autf
  auto* autf = app.add_subcommand("autf", "automizer orders of a named subgroup");
  std::string autf_path, autf_name;
  autf->add_option("datum", autf_path)->required();
  autf->add_option("--subgroup", autf_name, "name of a subgroup block")->required();

  // conjugate
  auto* conj = app.add_subcommand("conjugate", "fusion conjugacy of two named subgroups");
  std::string conj_path, conj_p, conj_r;
  conj->add_option("datum", conj_path)->required();
  conj->add_option("P", conj_p)->required();
  conj->add_option("R", conj_r)->required();

  // catalog
  auto* cat = app.add_subcommand("catalog", "catalog utilities");
  auto* cat_list = cat->add_subcommand("list", "list catalog names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? 0 : 2;
  }

  fk_init(raise_caps ? 1 : 0);

  if (all->parsed()) {
    GroupHandle g;
    if (int rc = open_group(all_group, g)) return rc;
    fk_search_options opts{};
    opts.allow_core = allow_core ? 1 : 0;
    opts.allow_partial_focal = allow_partial_focal ? 1 : 0;
    opts.jobs = jobs;
    opts.transcript_log = log_mode == "appendixc" ? 1 : 0;
    opts.log_line = print_log_line;
    fk_system_list* list = nullptr;
    fk_status st = fk_all_fusion_systems(g.g, all_p, &opts, &list);
    if (st != FK_OK) return fail_with(st);
    char* text = nullptr;
    fk_system_list_table(list, &text);
    std::printf("%s", text);
    fk_string_free(text);
    // emit each result as a datum file body for downstream tools
    for (int i = 0; i < fk_system_list_size(list); ++i) {
      fk_system* s = nullptr;
      fk_system_list_get(list, i, &s);
      char* body = nullptr;
      fk_datum_write(s, &body);
      std::printf("---- system %d ----\n%s", i + 1, body);
      fk_string_free(body);
      fk_system_free(s);
    }
    fk_system_list_free(list);
    return 0;
  }

  if (sat->parsed()) {
    SystemHandle s;
    if (int rc = open_datum(sat_path, s)) return rc;
    int verdict = 0;
    char* failing = nullptr;
    fk_status st = fk_system_is_saturated(s.s, &verdict, &failing);
    if (st != FK_OK) return fail_with(st);
    if (verdict) {
      std::printf("true\n");
    } else {
      std::printf("false (%s)\n", failing);
    }
    fk_string_free(failing);
    return verdict ? 0 : 1;
  }

  if (gf->parsed()) {
    GroupHandle g;
    if (int rc = open_group(gf_group, g)) return rc;
    fk_system* s = nullptr;
    fk_status st = fk_group_fusion_system(g.g, gf_p, &s);
    if (st != FK_OK) return fail_with(st);
    char* body = nullptr;
    fk_datum_write(s, &body);
    std::printf("%s", body);
    fk_string_free(body);
    char* desc = nullptr;
    fk_system_describe(s, &desc);
    std::fprintf(stderr, "%s", desc);
    fk_string_free(desc);
    fk_system_free(s);
    return 0;
  }

  if (iso->parsed()) {
    SystemHandle a, b;
    if (int rc = open_datum(iso_a, a)) return rc;
    if (int rc = open_datum(iso_b, b)) return rc;
    int verdict = 0;
    fk_status st = fk_systems_isomorphic(a.s, b.s, &verdict);
    if (st != FK_OK) return fail_with(st);
    std::printf(verdict ? "true\n" : "false\n");
    return verdict ? 0 : 1;
  }

  if (autf->parsed()) {
    SystemHandle s;
    if (int rc = open_datum(autf_path, s)) return rc;
    int64_t aut = 0, outer = 0;
    fk_status st = fk_system_automizer_order(s.s, autf_name.c_str(), &aut, &outer);
    if (st != FK_OK) return fail_with(st);
    std::printf("Aut_F(%s) has order %lld, Out_F(%s) has order %lld\n", autf_name.c_str(),
                static_cast<long long>(aut), autf_name.c_str(), static_cast<long long>(outer));
    return 0;
  }

  if (conj->parsed()) {
    SystemHandle s;
    if (int rc = open_datum(conj_path, s)) return rc;
    int verdict = 0;
    fk_status st = fk_system_conjugate(s.s, conj_p.c_str(), conj_r.c_str(), &verdict);
    if (st != FK_OK) return fail_with(st);
    std::printf(verdict ? "true\n" : "false\n");
    return verdict ? 0 : 1;
  }

  if (cat_list->parsed() || cat->parsed()) {
    char* text = nullptr;
    fk_status st = fk_catalog_names(&text);
    if (st != FK_OK) return fail_with(st);
    std::printf("%s", text);
    fk_string_free(text);
    return 0;
  }

  return 2;
}
