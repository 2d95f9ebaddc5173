// Copyright hodgespec authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef HODGE_SRC_CSV_HPP
#define HODGE_SRC_CSV_HPP

#include <string>
#include <vector>

namespace hodge
{

// RFC 4180 field quoting.
inline std::string csv_field(const std::string &s)
{
  if (s.find_first_of(",\"\r\n") == std::string::npos)
  {
    return s;
  }
  std::string out = "\"";
  for (char c : s)
  {
    if (c == '"')
    {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string> &fields)
{
  std::string out;
  for (std::size_t i = 0; i < fields.size(); i++)
  {
    out += (i ? "," : "") + csv_field(fields[i]);
  }
  return out + "\r\n";
}

}  // namespace hodge

#endif  // HODGE_SRC_CSV_HPP
