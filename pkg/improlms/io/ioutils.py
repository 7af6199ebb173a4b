"""improlms/improlms/io/ioutils.py.

Path helpers and atomic text output.
"""
import os
import tempfile


def abs_fname(fname):
    """Checks if fname is abs. If not, returns abs. Tilde safe.

    Parameters
    -----------
    fname: str

    Returns
    --------
    abs_fname: str
      Maybe same as fname, maybe not.
    """
    fname = os.fspath(fname)
    if os.path.isabs(fname):
        pass
    elif fname.startswith("~"):
        fname = os.path.expanduser(fname)
    else:
        fname = os.path.abspath(fname)

    return fname


def check_and_makedirs(fname):
    """Checks if the directories of the path exists. If not, makedirs!

    Parameters
    -----------
    fname: str

    Returns
    --------
    None
    """
    dirs = os.path.dirname(fname)

    if dirs == "":
        return None

    if not os.path.isdir(dirs):
        os.makedirs(dirs)

    return None


def _file_mode():
    """Mode of a newly created regular file under the current umask."""
    umask = os.umask(0)
    os.umask(umask)
    return 0o666 & ~umask


def atomic_write(fname, text):
    """Writes text as UTF-8 into a temporary file next to fname and renames
    it to fname. Readers never see a partial file.

    Parameters
    -----------
    fname: str
    text: str

    Returns
    --------
    fname: str
      absolute path of the written file.
    """
    fname = abs_fname(fname)
    check_and_makedirs(fname)

    descriptor, temporary = tempfile.mkstemp(
        dir=os.path.dirname(fname), prefix=".", suffix=".tmp"
    )
    try:
        with os.fdopen(descriptor, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        # mkstemp creates 0600
        os.chmod(temporary, _file_mode())
        os.replace(temporary, fname)
    except BaseException:
        if os.path.exists(temporary):
            os.remove(temporary)
        raise

    return fname
