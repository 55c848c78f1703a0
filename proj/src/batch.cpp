#include "toric/batch.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "toric/chern.hpp"
#include "toric/error.hpp"
#include "toric/io.hpp"
#include "toric/primitive.hpp"

namespace toric {

BatchRow classify_fan(const LatticeFan& f, const std::string& file) {
  BatchRow row;
  row.file = file;
  row.dim = f.rank();
  row.rays = f.ray_count();
  row.picard_rank = f.picard_rank();
  row.is_fano = is_fano(f);
  if (const auto c = minimal_centered_collection(f)) {
    row.m = static_cast<int>(c->size()) - 1;
    row.rpc_count = relevant_collections(f, *c).size();
  }
  if (f.rank() >= 2) row.min_ch2 = screen_2fano(f).minimum;
  if (row.m) row.bound_candidate = candidate_bound_predicate(row.dim, *row.m, row.picard_rank);
  return row;
}

std::vector<std::filesystem::path> list_fan_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".fan") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

BatchResult batch_classify(const std::vector<std::filesystem::path>& files, const std::filesystem::path& root,
                           unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(files.size(), 1)));
  BatchResult out;
  out.rows.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < files.size();) {
      const std::string name = files[k].lexically_relative(root).generic_string();
      try {
        out.rows[k] = classify_fan(read_fan_file(files[k].string()), name);
      } catch (const std::exception& e) {
        out.rows[k] = BatchRow{};
        out.rows[k].file = name;
        out.rows[k].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& r : out.rows)
    if (r.error.empty()) ++out.histogram[r.dim][r.m.value_or(-1)];
  return out;
}

BatchResult batch_classify(const std::filesystem::path& dir, unsigned workers) {
  return batch_classify(list_fan_files(dir), dir, workers);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string batch_csv(const BatchResult& r) {
  std::ostringstream os;
  os << "file,dim,rays,picard_rank,is_fano,m,rpc_count,min_ch2,bound_candidate,error\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.file) << ',';
    if (!row.error.empty()) {
      os << ",,,,,,,," << csv_field(row.error) << '\n';
      continue;
    }
    os << row.dim << ',' << row.rays << ',' << row.picard_rank << ',' << (row.is_fano ? "true" : "false") << ',';
    if (row.m) os << *row.m;
    os << ',' << row.rpc_count << ',';
    if (row.min_ch2) os << row.min_ch2->get_str();
    os << ',' << (row.bound_candidate ? "true" : "false") << ",\n";
  }
  return os.str();
}

std::string histogram_text(const BatchResult& r) {
  std::ostringstream os;
  for (const auto& [dim, counts] : r.histogram) {
    std::size_t total = 0;
    os << "dim " << dim << ":";
    for (const auto& [m, n] : counts) {
      os << " m=" << (m < 0 ? std::string("none") : std::to_string(m)) << ':' << n;
      total += n;
    }
    os << " (total " << total << ")\n";
  }
  return os.str();
}

}  // namespace toric
