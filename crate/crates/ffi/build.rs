fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();

    let result = cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(cbindgen::Config {
            language: cbindgen::Language::C,
            cpp_compat: true,
            include_guard: Some("THREEFOLD_H".into()),
            include_version: false,
            documentation: true,
            documentation_style: cbindgen::DocumentationStyle::Doxy,
            enumeration: cbindgen::EnumConfig { prefix_with_name: true, ..Default::default() },
            ..Default::default()
        })
        .generate();

    match result {
        Ok(bindings) => {
            bindings.write_to_file(format!("{crate_dir}/include/threefold.h"));
            println!("cargo:rerun-if-changed=src/lib.rs");
        }
        // rerun unconditionally until the header generates
        Err(e) => println!("cargo:warning=cbindgen: {e}"),
    }
}
