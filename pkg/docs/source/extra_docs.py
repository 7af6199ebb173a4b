"""
A script for extra doc generation.
Feel free to extend!

Contents:
1. Create markdown table of configuration options.
"""
import os

import improlms as ilms

if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))

    # create md dir
    md_path = os.path.abspath(os.path.join(here, "..", "md"))
    os.makedirs(md_path, exist_ok=True)

    # 1. Config options.
    with open(os.path.join(md_path, "config_options.md"), "w") as f:
        valid_options = ilms.io.config.valid_options
        for section, options in valid_options.items():
            f.write(f"## {section}\n\n")
            for option in options.values():
                t_str = ", ".join(t.__name__ for t in option.allowed_types)
                f.write(
                    f"<details><summary><strong>{option.key}"
                    "</strong></summary><p>\n"
                )
                f.write(f"\n{option.description}  \n")
                f.write(f"- _allowed types_: {t_str}  \n")
                if option.required:
                    f.write("- _required_  \n")
                elif option.default is not None:
                    f.write(f"- _default_: {option.default}  \n")
                f.write("</p></details> \n\n")
