use std::path::Path;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    cbindgen::generate(".")
        .expect("Unable to generate C bindings")
        .write_to_file(Path::new("include").join("rtlab.h"));
}
