// Seeded random dataset generator shared by the classifier cross-check tests.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

struct RawDataset {
  std::vector<bool> numeric;                   // per feature
  std::vector<std::vector<std::string>> sym;   // row-major, "" means missing
  std::vector<std::vector<double>> num;        // parallel payload for numeric cells
  std::vector<std::vector<bool>> missing;
  std::vector<std::string> labels;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next(std::uint64_t bound) { return eng_() % bound; }
  double uniform() { return static_cast<double>(eng_()) / static_cast<double>(UINT64_MAX); }

 private:
  std::mt19937_64 eng_;
};

// Mixed symbolic/numeric rows with occasional missing cells; small value
// alphabets so distance ties actually happen.
inline RawDataset random_dataset(std::uint64_t seed, std::size_t max_rows = 200,
                                 std::size_t max_features = 8) {
  Rng rng(seed);
  RawDataset ds;
  const std::size_t nf = 1 + rng.next(max_features);
  const std::size_t nrows = 1 + rng.next(max_rows);
  const std::size_t nclasses = 1 + rng.next(4);
  ds.numeric.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) ds.numeric[f] = rng.next(4) == 0;

  for (std::size_t i = 0; i < nrows; ++i) {
    std::vector<std::string> srow(nf);
    std::vector<double> nrow(nf, 0.0);
    std::vector<bool> mrow(nf, false);
    for (std::size_t f = 0; f < nf; ++f) {
      if (rng.next(12) == 0) {
        mrow[f] = true;
        continue;
      }
      if (ds.numeric[f])
        nrow[f] = static_cast<double>(rng.next(7)) - 2.0;
      else
        srow[f] = std::string(1, static_cast<char>('a' + rng.next(5)));
    }
    ds.sym.push_back(std::move(srow));
    ds.num.push_back(std::move(nrow));
    ds.missing.push_back(std::move(mrow));
    ds.labels.push_back(std::string(1, static_cast<char>('A' + rng.next(nclasses))));
  }
  return ds;
}

// A query row drawn from the same alphabets (sometimes unseen symbols).
inline void random_query(Rng& rng, const RawDataset& ds, std::vector<std::string>& sym,
                         std::vector<double>& num, std::vector<bool>& missing) {
  const std::size_t nf = ds.numeric.size();
  sym.assign(nf, "");
  num.assign(nf, 0.0);
  missing.assign(nf, false);
  for (std::size_t f = 0; f < nf; ++f) {
    if (rng.next(12) == 0) {
      missing[f] = true;
      continue;
    }
    if (ds.numeric[f])
      num[f] = static_cast<double>(rng.next(9)) - 3.0;
    else
      sym[f] = std::string(1, static_cast<char>('a' + rng.next(6)));
  }
}

}  // namespace oracle
