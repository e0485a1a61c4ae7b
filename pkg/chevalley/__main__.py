"""
Chevalley module entry point.

Allows you to run the package as a module.
>>> python -m chevalley decompose u.txt
"""

from .cli import main

if __name__ == "__main__":
    main()
