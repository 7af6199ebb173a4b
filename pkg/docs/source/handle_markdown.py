"""Prepares README.md and CONTRIBUTING.md for the docs and for setup.py.

The docs include processed copies from docs/md/. Links between markdown files
that have a page of their own in the docs (CONTRIBUTING.md has
CONTRIBUTING.rst) point to that page. Other relative links are rewritten
relative to docs/source, since sphinx builds from there. External links and
anchors become html anchors, which sphinx_mdinclude keeps as they are.
"""
import os
import re

# Path to this file.
file_path = os.path.abspath(os.path.dirname(__file__))


def get_markdown_links(text: str) -> list:
    """Get the markdown links from a string.

    Args:
        text (str): Text.

    Returns:
        list: (label, target) tuples.
    """
    return re.findall(r"\[(.*?)\]\((.*?)\)", text)


def get_abs_path_from(path: str, sub_folder: str = "") -> str:
    """Get the absolute path from the projects base directory.

    Args:
        path (str): Relative file path given from the projects base directory.
        sub_folder (str): Optional folder between base directory and path.

    Returns:
        str: Absolute path to the given file.
    """
    return os.path.abspath(os.path.join(file_path, "../../", sub_folder, path))


# Folder to save the processed markdown files to.
folder_to_save_to = get_abs_path_from("docs/md/")

# List of markdown files that are used in the documentation.
markdown_files = [
    get_abs_path_from("README.md"),
    get_abs_path_from("CONTRIBUTING.md"),
]


def docs_page_of(target: str):
    """Html page of a markdown file that has its own page in the docs.

    Args:
        target (str): Link target, relative to the projects base directory.

    Returns:
        str or None: e.g. "CONTRIBUTING.html", None if there is no such page.
    """
    stem, extension = os.path.splitext(os.path.basename(target))
    if extension != ".md":
        return None
    if not os.path.isfile(os.path.join(file_path, f"{stem}.rst")):
        return None
    return f"{stem}.html"


def process_file(
    file: str, relative_links: bool = True, return_content: bool = False
):
    """Process a markdown file.

    Args:
        file (str): Path to the markdown file.
        relative_links (bool, optional):
            Rewrite links for the docs. If False, links to repository files
            stay as they are, e.g. for the package's long description.
            Defaults to True.
        return_content (bool, optional):
            Return the content instead of saving it to a file.
            Defaults to False.

    Returns:
        str:
            Content of the markdown file.
            Only returned if return_content is True.
    """
    with open(file, encoding="utf-8") as f:
        content = f.read()

    for label, target in get_markdown_links(content):
        link = f"[{label}]({target})"
        if target.startswith(("http", "#")):
            content = content.replace(
                link, f"<a href='{target}'>{label}</a>"
            )
            continue
        if not relative_links:
            continue

        page = docs_page_of(target)
        if page is None:
            page = os.path.relpath(get_abs_path_from(target), file_path)
        content = content.replace(link, f"[{label}]({page})")

    if return_content:
        return content

    os.makedirs(folder_to_save_to, exist_ok=True)
    fname = os.path.join(folder_to_save_to, os.path.basename(file))
    with open(fname, "w", encoding="utf-8") as f:
        f.write(content)


if __name__ == "__main__":
    for file in markdown_files:
        process_file(file)
