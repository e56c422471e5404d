//! Compiles and runs a C program against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include <string.h>
#include "psisum.h"

int main(void) {
    PsisumComplex out;
    PsisumComplex half = {0.5, 0.0};
    if (psisum_digamma(half, &out) != PSISUM_STATUS_OK) return 1;
    if (fabs(out.re + 1.96351002602142) > 1e-13) return 2;
    PsisumComplex zero = {0.0, 0.0};
    if (psisum_digamma(zero, &out) != PSISUM_STATUS_POLE) return 3;
    if (strlen(psisum_last_error_message()) == 0) return 4;

    PsisumCheck chk;
    if (psisum_check_identity("SUM_A_K1", "a=0.5 z=0.5", 1e-8, &chk) != PSISUM_STATUS_OK) return 5;
    if (!chk.pass) return 6;

    PsisumReport *report = NULL;
    if (psisum_report_run("bessel", 0.0, "b=1 z=0.25", 1, &report) != PSISUM_STATUS_OK) return 7;
    size_t pass = 0, fail = 0, error = 0;
    psisum_report_summary(report, &pass, &fail, &error);
    if (psisum_report_count(report) != 4 || pass != 4) return 8;
    char *json = NULL;
    if (psisum_report_to_json(report, 1, &json) != PSISUM_STATUS_OK) return 9;
    if (strstr(json, "\"SUM_J\"") == NULL) return 10;
    psisum_string_free(json);
    psisum_report_free(report);
    printf("ok %s\n", psisum_version());
    return 0;
}
"#;

fn find_static_lib(target_dir: &Path) -> Option<PathBuf> {
    ["debug", "release"].iter().map(|p| target_dir.join(p).join("libpsisum_ffi.a")).find(|p| p.exists())
}

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target_dir = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let Some(lib) = find_static_lib(&target_dir) else {
        eprintln!("static library not built; skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C program failed to compile");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
