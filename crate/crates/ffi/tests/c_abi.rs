//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "poisson_forge.h"

int main(void) {
    PfBivector *b = NULL;
    if (pf_bivector_parse("z0*z1*d2/\\d3", &b) != PF_STATUS_OK) return 10;
    PfCp3Verdict v;
    if (pf_check_cp3(b, &v) != PF_STATUS_OK || !v.poisson || !v.nontrivial) return 11;
    char *s = NULL;
    if (pf_bivector_render(b, &s) != PF_STATUS_OK) return 12;
    printf("%s\n", s);
    pf_string_free(s);
    pf_bivector_free(b);

    PfBivector *bad = NULL;
    if (pf_bivector_parse("z0*d1 +", &bad) != PF_STATUS_SYNTAX || bad != NULL) return 13;
    const char *msg = pf_last_error();
    if (msg == NULL || strstr(msg, "column") == NULL) return 14;
    printf("%s\n", pf_version());
    return 0;
}
"#;

fn deps_dir() -> PathBuf {
    std::env::current_exe().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let lib = deps_dir().join("libpoisson_forge_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = std::env::temp_dir().join(format!("pf-c-abi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let exe = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, format!("z0*z1*d2/\\d3\n{}\n", env!("CARGO_PKG_VERSION")));
    std::fs::remove_dir_all(&dir).ok();
}
