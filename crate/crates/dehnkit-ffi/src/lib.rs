// ffi crate placeholder
