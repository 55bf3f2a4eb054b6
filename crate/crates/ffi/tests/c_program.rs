//! Compiles a small C program against the generated header and the shared
//! library, then runs it. Skipped when no C compiler is on `PATH`.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <math.h>
#include "lomax_ebayes.h"

int main(void) {
    double data[] = {1.0, 2.0, 0.5, 3.5};
    LomaxSample *s = NULL;
    if (lomax_sample_new(data, 4, 3.0, &s) != LOMAX_STATUS_OK) return 10;
    LomaxEstimate e;
    if (lomax_sample_estimate(s, 0.5, &e) != LOMAX_STATUS_OK) return 11;
    lomax_sample_free(s);
    if (!(e.eb[LOMAX_LOSS_EL] < e.eb[LOMAX_LOSS_KL] && e.eb[LOMAX_LOSS_KL] < e.eb[LOMAX_LOSS_SEL])) return 12;
    double v;
    if (lomax_ebayes(9, 0.5, 4, e.t_stat, &v) != LOMAX_STATUS_INVALID_ENUM) return 13;
    if (lomax_last_error() == NULL) return 14;
    if (lomax_cdf(2.0, 1.0, 1.0, &v) != LOMAX_STATUS_OK || fabs(v - 0.75) > 1e-15) return 15;
    printf("%s %.6f\n", lomax_version(), e.eb[LOMAX_LOSS_SEL]);
    return 0;
}
"#;

fn find_compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    })
}

/// Directory holding the built shared library: the parent of `deps/`.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = find_compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let lib_dir = artifact_dir();
    let so = lib_dir.join("liblomax_ebayes_ffi.so");
    if !so.exists() {
        eprintln!("{} not built on this platform; skipping", so.display());
        return;
    }
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("main.c");
    let bin = work.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg("-o")
        .arg(&bin)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-llomax_ebayes_ffi")
        .arg("-lm")
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");

    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with(env!("CARGO_PKG_VERSION")), "{text}");
}
