// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for `lgnu-core` live in `benches/`.
