/* Copyright 2026 The incore Authors. SPDX-License-Identifier: Apache-2.0 */

void gauss_seidel(int n, int m, double (*restrict phi)[m]) {
  for (int k = 1; k < n - 1; ++k) {
    for (int i = 1; i < m - 1; ++i) {
      phi[k][i] = (phi[k][i - 1] + phi[k][i + 1] + phi[k - 1][i] + phi[k + 1][i]) * 0.25;
    }
  }
}
