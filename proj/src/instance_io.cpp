#include "cohomlab/instance_io.hpp"

#include "cohomlab/residue.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace cohomlab::io {

using linalg::Vec;
using linalg::i64;

namespace {

struct Block {
  int line;  // first line of the block body
  std::vector<std::vector<i64>> rows;
};

struct Lines {
  std::string name;
  std::map<std::string, Block> blocks;
};

bool is_block_header(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(c >= 'A' && c <= 'Z') && c != '_') return false;
  return true;
}

Lines tokenize(std::istream& in, const std::string& name) {
  Lines out;
  out.name = name;
  std::string cur;
  int lineno = 0;
  std::string active;
  int active_line = 0;
  while (std::getline(in, cur)) {
    ++lineno;
    auto hash = cur.find('#');
    if (hash != std::string::npos) cur = cur.substr(0, hash);
    std::istringstream ls(cur);
    std::string first;
    if (!(ls >> first)) continue;
    if (is_block_header(first)) {
      if (first == "END") {
        active.clear();
        continue;
      }
      active = first;
      active_line = lineno + 1;
      if (out.blocks.count(active))
        throw ParseError(name, lineno, "duplicate block " + active);
      out.blocks[active] = Block{active_line, {}};
      continue;
    }
    if (active.empty())
      throw ParseError(name, lineno, "data outside any block");
    std::vector<i64> row;
    std::istringstream ls2(cur);
    std::string tok;
    while (ls2 >> tok) {
      try {
        size_t used = 0;
        i64 v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        row.push_back(v);
      } catch (const std::exception&) {
        // PARAMS lines carry `key value`; keep keys as sentinel rows.
        if (active == "PARAMS" && row.empty()) {
          // encode the key via its characters; handled by the caller
          row.push_back(-1000 - static_cast<i64>(out.blocks[active].rows.size()));
          break;
        }
        throw ParseError(name, lineno, "bad integer '" + tok + "'");
      }
    }
    if (!row.empty()) out.blocks[active].rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

massey::Instance read_instance(std::istream& in, const std::string& name) {
  // PARAMS uses `key value` lines, so parse it separately from the
  // integer blocks.
  std::map<std::string, i64> params;
  std::map<std::string, Block> blocks;
  std::string cur, active;
  int lineno = 0;
  while (std::getline(in, cur)) {
    ++lineno;
    auto hash = cur.find('#');
    if (hash != std::string::npos) cur = cur.substr(0, hash);
    std::istringstream ls(cur);
    std::string first;
    if (!(ls >> first)) continue;
    if (is_block_header(first)) {
      if (first == "END") {
        active.clear();
        continue;
      }
      active = first;
      if (blocks.count(active) || (active == "PARAMS" && !params.empty()))
        throw ParseError(name, lineno, "duplicate block " + active);
      if (active != "PARAMS") blocks[active] = Block{lineno + 1, {}};
      continue;
    }
    if (active.empty()) throw ParseError(name, lineno, "data outside a block");
    if (active == "PARAMS") {
      std::string key = first;
      i64 value;
      if (!(ls >> value))
        throw ParseError(name, lineno, "PARAMS line needs `key value`");
      params[key] = value;
      continue;
    }
    std::vector<i64> row;
    std::istringstream ls2(cur);
    i64 v;
    while (ls2 >> v) row.push_back(v);
    if (ls2.fail() && !ls2.eof())
      throw ParseError(name, lineno, "bad integer in block " + active);
    if (!row.empty()) blocks[active].rows.push_back(std::move(row));
  }
  for (const char* key : {"p", "n", "m", "k", "t", "omega"})
    if (!params.count(key))
      throw ParseError(name, 0, std::string("missing PARAMS key ") + key);
  for (const char* b : {"UMODULE", "Y", "GROUP", "CHI", "LAMBDA"})
    if (!blocks.count(b))
      throw ParseError(name, 0, std::string("missing block ") + b);

  massey::Params par{params["p"], static_cast<int>(params["n"]),
                     static_cast<int>(params["m"]),
                     static_cast<int>(params["k"])};
  const Block& um = blocks["UMODULE"];
  if (um.rows.size() < 2 || um.rows[0].size() != 1)
    throw ParseError(name, um.line, "UMODULE needs rank, orders, matrix");
  int rank = static_cast<int>(um.rows[0][0]);
  if (static_cast<int>(um.rows.size()) != 2 + rank)
    throw ParseError(name, um.line, "UMODULE row count mismatch");
  std::vector<i64> orders = um.rows[1];
  if (static_cast<int>(orders.size()) != rank)
    throw ParseError(name, um.line + 1, "UMODULE orders width mismatch");
  std::vector<Vec> sigma;
  for (int r = 0; r < rank; ++r) {
    if (static_cast<int>(um.rows[2 + r].size()) != rank)
      throw ParseError(name, um.line + 2 + r, "UMODULE matrix width mismatch");
    sigma.push_back(um.rows[2 + r]);
  }
  const Block& yb = blocks["Y"];
  if (yb.rows.size() != 1 || static_cast<int>(yb.rows[0].size()) != rank)
    throw ParseError(name, yb.line, "Y must be one row of module width");

  massey::Instance inst = [&] {
    try {
      return massey::Instance::create(par, orders, sigma, yb.rows[0],
                                      params["t"],
                                      static_cast<int>(params["omega"]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(name, um.line, e.what());
    }
  }();

  // The derived blocks must match the canonical reconstruction exactly.
  const Block& gb = blocks["GROUP"];
  int nq = inst.q()->order();
  if (gb.rows.size() != static_cast<size_t>(nq) + 1 ||
      gb.rows[0] != std::vector<i64>{nq})
    throw ParseError(name, gb.line,
                     "GROUP table does not present the canonical quotient "
                     "(check k and omega against the module data)");
  for (int a = 0; a < nq; ++a) {
    if (static_cast<int>(gb.rows[a + 1].size()) != nq)
      throw ParseError(name, gb.line + a + 1, "GROUP row width mismatch");
    for (int b = 0; b < nq; ++b)
      if (gb.rows[a + 1][b] != inst.q()->mul(a, b))
        throw ParseError(name, gb.line + a + 1,
                         "GROUP table mismatch at row " + std::to_string(a));
  }
  const Block& cb = blocks["CHI"];
  if (cb.rows.size() != 1 ||
      cb.rows[0] != std::vector<i64>(inst.chi().begin(), inst.chi().end()))
    throw ParseError(name, cb.line, "CHI table mismatch");
  const Block& lb = blocks["LAMBDA"];
  if (lb.rows.size() != 1 ||
      lb.rows[0] !=
          std::vector<i64>(inst.lambda().begin(), inst.lambda().end()))
    throw ParseError(name, lb.line, "LAMBDA table mismatch");
  return inst;
}

massey::Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_instance(in, path);
}

std::string write_instance(const massey::Instance& inst) {
  std::ostringstream os;
  const auto& par = inst.params();
  os << "PARAMS\n";
  os << "p " << par.p << "\n";
  os << "n " << par.n << "\n";
  os << "m " << par.m << "\n";
  os << "k " << par.k << "\n";
  os << "t " << inst.t() << "\n";
  os << "omega " << inst.omega_level() << "\n";
  os << "UMODULE\n" << inst.rank() << "\n";
  for (int i = 0; i < inst.rank(); ++i)
    os << inst.orders()[i] << (i + 1 == inst.rank() ? "\n" : " ");
  for (int r = 0; r < inst.rank(); ++r)
    for (int c = 0; c < inst.rank(); ++c)
      os << inst.sigma_raw()[r][c] << (c + 1 == inst.rank() ? "\n" : " ");
  os << "Y\n";
  Vec y = inst.y_raw();
  for (int i = 0; i < inst.rank(); ++i)
    os << y[i] << (i + 1 == inst.rank() ? "\n" : " ");
  int nq = inst.q()->order();
  os << "GROUP\n" << nq << "\n";
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b)
      os << inst.q()->mul(a, b) << (b + 1 == nq ? "\n" : " ");
  os << "CHI\n";
  for (int a = 0; a < nq; ++a)
    os << inst.chi()[a] << (a + 1 == nq ? "\n" : " ");
  os << "LAMBDA\n";
  for (int a = 0; a < nq; ++a)
    os << inst.lambda()[a] << (a + 1 == nq ? "\n" : " ");
  os << "END\n";
  return os.str();
}

ModuleFile read_module(std::istream& in, const std::string& name) {
  Lines lines = tokenize(in, name);
  if (!lines.blocks.count("UMODULE"))
    throw ParseError(name, 0, "missing block UMODULE");
  const Block& um = lines.blocks["UMODULE"];
  if (um.rows.size() < 2 || um.rows[0].size() != 1)
    throw ParseError(name, um.line, "UMODULE needs rank, orders, matrix");
  int rank = static_cast<int>(um.rows[0][0]);
  if (static_cast<int>(um.rows.size()) != 2 + rank)
    throw ParseError(name, um.line, "UMODULE row count mismatch");
  std::vector<i64> orders = um.rows[1];
  std::vector<Vec> sigma;
  for (int r = 0; r < rank; ++r) sigma.push_back(um.rows[2 + r]);
  // p is the unique prime dividing the orders.
  i64 p = 0;
  for (i64 d : orders)
    if (d > 1) {
      for (i64 q = 2; q <= d; ++q)
        if (d % q == 0) {
          p = q;
          break;
        }
      break;
    }
  if (p == 0) throw ParseError(name, um.line + 1, "module has no p-part");
  graded::FilteredModule mod = [&] {
    try {
      return graded::FilteredModule(p, orders, sigma);
    } catch (const std::invalid_argument& e) {
      throw ParseError(name, um.line, e.what());
    }
  }();
  ModuleFile out{std::move(mod), std::nullopt};
  if (lines.blocks.count("DSUB")) {
    const Block& db = lines.blocks["DSUB"];
    std::vector<Vec> gens;
    for (const auto& r : db.rows) {
      if (static_cast<int>(r.size()) != rank)
        throw ParseError(name, db.line, "DSUB row width mismatch");
      gens.push_back(r);
    }
    out.dsub = out.module.span_of(gens);
  }
  return out;
}

ModuleFile read_module_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_module(in, path);
}

std::string write_module(const graded::FilteredModule& m,
                         const std::optional<linalg::RowSpan>& dsub) {
  std::ostringstream os;
  os << "UMODULE\n" << m.rank() << "\n";
  for (int i = 0; i < m.rank(); ++i)
    os << m.orders()[i] << (i + 1 == m.rank() ? "\n" : " ");
  // Recover the action matrix columnwise.
  for (int r = 0; r < m.rank(); ++r) {
    for (int c = 0; c < m.rank(); ++c) {
      Vec e(m.rank(), 0);
      e[c] = 1;
      os << m.act_sigma(e)[r] << (c + 1 == m.rank() ? "\n" : " ");
    }
  }
  if (dsub) {
    os << "DSUB\n";
    for (const auto& row : dsub->basis()) {
      for (int i = 0; i < m.rank(); ++i) {
        i64 raw = row[i] / (m.modulus() / m.orders()[i]);
        os << raw << (i + 1 == m.rank() ? "\n" : " ");
      }
    }
  }
  os << "END\n";
  return os.str();
}

std::string write_element(const groupring::GroupRingElement& x) {
  std::ostringstream os;
  const auto& params = x.ring()->params();
  if (params) {
    os << params->p << " " << params->m << " " << (params->n ? *params->n : 0);
  } else {
    os << x.ring()->modulus() << " 1 0";
  }
  os << " :";
  for (i64 c : x.coeffs()) os << " " << c;
  return os.str();
}

groupring::GroupRingElement read_element(const std::string& line) {
  std::istringstream in(line);
  i64 p;
  int m, n;
  std::string colon;
  if (!(in >> p >> m >> n >> colon) || colon != ":")
    throw std::runtime_error("element line must start with `p m n :`");
  Vec coeffs;
  i64 c;
  while (in >> c) coeffs.push_back(c);
  groupring::RingPtr ring =
      (n > 0) ? groupring::GroupRing::cyclic_p(residue::RingParams(p, m, n))
              : groupring::GroupRing::create(
                    groupring::FiniteGroupSpec::cyclic(
                        static_cast<int>(coeffs.size())),
                    residue::ipow(p, m));
  if (static_cast<int>(coeffs.size()) != ring->group().order())
    throw std::runtime_error("element line has the wrong coefficient count");
  return ring->from_coeffs(coeffs);
}

std::vector<i64> upper_triangle(const unipotent::UnipotentMatrix& u) {
  std::vector<i64> out;
  for (int i = 1; i <= u.dim(); ++i)
    for (int j = i + 1; j <= u.dim(); ++j) out.push_back(u.entry(i, j));
  return out;
}

unipotent::UnipotentMatrix from_upper_triangle(int dim, i64 modulus,
                                               const std::vector<i64>& entries) {
  unipotent::UnipotentMatrix u(dim, modulus);
  size_t at = 0;
  for (int i = 1; i <= dim; ++i)
    for (int j = i + 1; j <= dim; ++j) {
      if (at >= entries.size())
        throw std::runtime_error("upper triangle too short");
      u.set_entry(i, j, entries[at++]);
    }
  if (at != entries.size())
    throw std::runtime_error("upper triangle too long");
  return u;
}

}  // namespace cohomlab::io
