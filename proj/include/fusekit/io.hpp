#ifndef FUSEKIT_IO_HPP
#define FUSEKIT_IO_HPP

#include <map>
#include <string>

#include "fusekit/fusion.hpp"
#include "fusekit/group.hpp"

namespace fusekit {

// Group text format (UTF-8, line oriented):
//   perm <degree>
//   <image list, 1-based, degree entries>   (one generator per line)
// '#' starts a comment.  Parsing is strict: wrong-length lines are errors.
GroupPtr parse_group_text(const std::string& text, const std::string& origin = "<text>");
GroupPtr parse_group_file(const std::string& path);
std::string serialize_group(const GroupPtr& g);

// Fusion datum text format:
//   fusion p=<p> group=<catalog-name-or-path>
//   subgroup <name>
//     word <generator word>        (or a permutation image list per line)
//   autos <name>
//     gen <i> -> <word> [gen <j> -> <word> ...]   (one automorphism per line)
// The first subgroup block must be the whole group.  Words multiply the
// group generators g1..gk left to right; tokens look like g1 or g2^-1.
// Named subgroup blocks after the member blocks (without autos) are allowed
// as query handles and do not become datum members.
struct ParsedDatum {
  FusionData data;
  std::string group_name;
  std::vector<std::string> member_names;
  std::map<std::string, Sub> named;  // every named subgroup, members included
};

ParsedDatum parse_datum_text(const std::string& text, const std::string& origin = "<text>");
ParsedDatum parse_datum_file(const std::string& path);
std::string serialize_datum(const FusionData& d, const std::string& group_name,
                            const std::vector<std::string>& member_names = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fusekit

#endif
