#include "dgkit/appio/colmap_import.h"

#include <map>
#include <memory>

#include <sqlite3.h>

#include "dgkit/util/errors.h"

namespace dgkit {
namespace {

struct DatabaseCloser {
  void operator()(sqlite3* db) const { sqlite3_close(db); }
};
struct StatementFinalizer {
  void operator()(sqlite3_stmt* stmt) const { sqlite3_finalize(stmt); }
};
using Database = std::unique_ptr<sqlite3, DatabaseCloser>;
using Statement = std::unique_ptr<sqlite3_stmt, StatementFinalizer>;

Statement Prepare(sqlite3* db, const std::string& sql) {
  sqlite3_stmt* stmt = nullptr;
  if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
    throw UsageError(std::string("COLMAP database query failed: ") +
                     sqlite3_errmsg(db));
  }
  return Statement(stmt);
}

bool HasTable(sqlite3* db, const std::string& table) {
  Statement stmt = Prepare(
      db, "SELECT name FROM sqlite_master WHERE type='table' AND name=?;");
  sqlite3_bind_text(stmt.get(), 1, table.c_str(), -1, SQLITE_TRANSIENT);
  return sqlite3_step(stmt.get()) == SQLITE_ROW;
}

}  // namespace

std::vector<PairRecord> ImportColmapMatches(const std::string& database_path,
                                            int min_inliers) {
  sqlite3* raw = nullptr;
  const int rc =
      sqlite3_open_v2(database_path.c_str(), &raw, SQLITE_OPEN_READONLY, nullptr);
  Database db(raw);
  if (rc != SQLITE_OK) {
    throw UsageError("cannot open COLMAP database '" + database_path + "'");
  }
  if (!HasTable(db.get(), "images")) {
    throw UsageError("'" + database_path + "' has no images table");
  }

  std::map<long long, std::string> names;
  {
    Statement stmt = Prepare(db.get(), "SELECT image_id, name FROM images;");
    while (sqlite3_step(stmt.get()) == SQLITE_ROW) {
      const auto* text = sqlite3_column_text(stmt.get(), 1);
      names[sqlite3_column_int64(stmt.get(), 0)] =
          text ? reinterpret_cast<const char*>(text) : "";
    }
  }

  const std::string table =
      HasTable(db.get(), "two_view_geometries") ? "two_view_geometries" : "matches";
  if (!HasTable(db.get(), table)) {
    throw UsageError("'" + database_path + "' has no match tables");
  }

  std::vector<PairRecord> pairs;
  Statement stmt =
      Prepare(db.get(), "SELECT pair_id, rows FROM " + table + " ORDER BY pair_id;");
  while (sqlite3_step(stmt.get()) == SQLITE_ROW) {
    const long long pair_id = sqlite3_column_int64(stmt.get(), 0);
    const int rows = sqlite3_column_int(stmt.get(), 1);
    if (rows < min_inliers) continue;
    const long long id2 = pair_id % kColmapMaxImageId;
    const long long id1 = (pair_id - id2) / kColmapMaxImageId;
    const auto a = names.find(id1);
    const auto b = names.find(id2);
    if (a == names.end() || b == names.end()) {
      throw UsageError("pair " + std::to_string(pair_id) +
                       " references an image missing from the images table");
    }
    for (const std::string* name : {&a->second, &b->second}) {
      if (name->empty() || name->find_first_of(" \t\r\n") != std::string::npos) {
        throw UsageError("image name '" + *name +
                         "' is empty or contains whitespace");
      }
    }
    pairs.push_back(PairRecord::Match(a->second, b->second, rows));
  }
  return pairs;
}

}  // namespace dgkit
