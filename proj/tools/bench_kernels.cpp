#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "parithlab/matrix.hpp"

using namespace parithlab;

namespace {

MatrixFq random_matrix(const Fq& F, int n, std::uint64_t& state) {
  MatrixFq m(F, n, n);
  std::uint64_t q = 1;
  for (int i = 0; i < F.degree(); ++i) q *= F.p();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      m.set(i, j, F.decode((state >> 33) % q));
    }
  return m;
}

template <typename Kernel>
double time_ms(Kernel&& k, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) k();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 256;
  int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::uint64_t state = 42;

  for (int degree : {1, 4}) {
    Fq F(7, degree);
    MatrixFq a = random_matrix(F, n, state);
    MatrixFq b = random_matrix(F, n, state);
    MatrixFq rs = matmul_serial(a, b);
    MatrixFq rp = matmul_parallel(a, b);
    if (!(rs == rp)) {
      std::printf("MISMATCH between serial and parallel kernels!\n");
      return 1;
    }
    double ts = time_ms([&] { matmul_serial(a, b); }, reps);
    double tp = time_ms([&] { matmul_parallel(a, b); }, reps);
    std::printf("n=%d F_{7^%d}: serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
                n, degree, ts, tp, ts / tp);
  }
  return 0;
}
